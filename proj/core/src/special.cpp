#include "hypsym/special.hpp"

#include "hypsym/errors.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <array>
#include <cmath>
#include <numbers>

namespace hypsym {

namespace {

constexpr double kLanczosG = 7.0;
constexpr std::array<double, 9> kLanczos = {
    0.99999999999980993,  676.5203681218851,     -1259.1392167224028,
    771.32342877765313,   -176.61502916214059,   12.507343278686905,
    -0.13857109526572012, 9.9843695780195716e-6, 1.5056327351493116e-7};

std::complex<double> lanczos_sum(std::complex<double> z) {
  std::complex<double> x = kLanczos[0];
  for (std::size_t i = 1; i < kLanczos.size(); ++i) x += kLanczos[i] / (z + static_cast<double>(i));
  return x;
}

}  // namespace

std::complex<double> complex_log_gamma(std::complex<double> z) {
  const double pi = std::numbers::pi;
  if (z.real() < 0.5) {
    // Gamma(z) Gamma(1 - z) = pi / sin(pi z)
    return std::log(pi) - std::log(std::sin(pi * z)) - complex_log_gamma(1.0 - z);
  }
  z -= 1.0;
  const std::complex<double> t = z + kLanczosG + 0.5;
  return 0.5 * std::log(2.0 * pi) + (z + 0.5) * std::log(t) - t + std::log(lanczos_sum(z));
}

std::complex<double> complex_gamma(std::complex<double> z) {
  const double pi = std::numbers::pi;
  if (z.real() < 0.5) return pi / (std::sin(pi * z) * complex_gamma(1.0 - z));
  z -= 1.0;
  const std::complex<double> t = z + kLanczosG + 0.5;
  return std::sqrt(2.0 * pi) * std::pow(t, z + 0.5) * std::exp(-t) * lanczos_sum(z);
}

double bessel_K_cutoff(std::complex<double> nu, double x, double eps) {
  const double a = std::abs(nu.real());
  const double target = -std::log(eps);
  double t = 1.0;
  // log of the integrand bound: -x cosh t + a t
  while (x * std::cosh(t) - a * t < target + std::log(1.0 + t)) t += 0.25;
  return t;
}

std::complex<double> bessel_K(std::complex<double> nu, double x, double eps) {
  if (!(x > 0.0)) throw DomainError("bessel_K needs x > 0");
  const double upper = bessel_K_cutoff(nu, x, eps * 1e-3);
  const double a = nu.real(), b = nu.imag();
  using boost::math::quadrature::gauss_kronrod;
  // cosh((a + ib) t) = cosh(at) cos(bt) + i sinh(at) sin(bt)
  auto re = [&](double t) { return std::exp(-x * std::cosh(t)) * std::cosh(a * t) * std::cos(b * t); };
  auto im = [&](double t) { return std::exp(-x * std::cosh(t)) * std::sinh(a * t) * std::sin(b * t); };
  const double tol = 1e-14;
  const double vr = gauss_kronrod<double, 31>::integrate(re, 0.0, upper, 20, tol);
  const double vi = b == 0.0 ? 0.0 : gauss_kronrod<double, 31>::integrate(im, 0.0, upper, 20, tol);
  return {vr, vi};
}

}  // namespace hypsym
