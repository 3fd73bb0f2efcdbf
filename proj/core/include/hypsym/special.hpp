#pragma once

// Special functions on the analytic path: complex Gamma and the modified
// Bessel function K_nu(x) of complex order and positive argument.

#include <complex>

namespace hypsym {

// Lanczos approximation (g = 7, 9 terms) with reflection for Re z < 1/2.
std::complex<double> complex_gamma(std::complex<double> z);
std::complex<double> complex_log_gamma(std::complex<double> z);

// K_nu(x) = int_0^inf exp(-x cosh t) cosh(nu t) dt, by adaptive Gauss-Kronrod
// quadrature on [0, T] with exp(-x cosh T) cosh(Re(nu) T) below eps.
// Throws DomainError for x <= 0.
std::complex<double> bessel_K(std::complex<double> nu, double x, double eps = 1e-13);

// Upper truncation point used by bessel_K.
double bessel_K_cutoff(std::complex<double> nu, double x, double eps);

}  // namespace hypsym
