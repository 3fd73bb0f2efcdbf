#pragma once

#include "hypsym/clifford.hpp"
#include "hypsym/vahlen.hpp"

#include <cmath>
#include <cstdint>
#include <vector>
#include <random>

namespace testing {

using Rng = std::mt19937_64;

inline std::int64_t uniform_int(Rng& rng, std::int64_t lo, std::int64_t hi) {
  return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
}

inline double uniform_real(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * (static_cast<double>(rng() >> 11) * 0x1.0p-53);
}

template <class T>
hypsym::CliffordElement<T> random_element(Rng& rng, int dim, std::int64_t bound) {
  hypsym::CliffordElement<T> x(dim);
  for (hypsym::Mask m = 0; m < x.size(); ++m) x[m] = T(uniform_int(rng, -bound, bound));
  return x;
}

inline hypsym::Rational random_rational(Rng& rng, std::int64_t num_bound, std::int64_t den_bound) {
  return hypsym::Rational(uniform_int(rng, -num_bound, num_bound), uniform_int(rng, 1, den_bound));
}

inline hypsym::CliffordElement<hypsym::Rational> random_rational_element(Rng& rng, int dim) {
  hypsym::CliffordElement<hypsym::Rational> x(dim);
  for (hypsym::Mask m = 0; m < x.size(); ++m) x[m] = random_rational(rng, 9, 4);
  return x;
}

template <class T>
hypsym::CliffordElement<T> random_vector(Rng& rng, int dim, std::int64_t bound) {
  hypsym::CliffordElement<T> v(dim);
  v[0] = T(uniform_int(rng, -bound, bound));
  for (int i = 1; i <= dim; ++i) v[hypsym::Mask{1} << (i - 1)] = T(uniform_int(rng, -bound, bound));
  return v;
}

// Generators of SV_m over the reals: translations, the inversion J,
// dilations and rotations by unit vectors.
inline hypsym::VahlenMatrix<double> random_generator(Rng& rng, int m) {
  using E = hypsym::CliffordElement<double>;
  const auto kind = uniform_int(rng, 0, 3);
  if (kind == 0) {
    E b(m);
    b[0] = uniform_real(rng, -1, 1);
    for (int i = 1; i <= m; ++i) b[hypsym::Mask{1} << (i - 1)] = uniform_real(rng, -1, 1);
    return {E::scalar(m, 1), b, E(m), E::scalar(m, 1)};
  }
  if (kind == 1) return {E(m), E::scalar(m, -1), E::scalar(m, 1), E(m)};
  if (kind == 2) {
    const double s = std::sqrt(uniform_real(rng, 0.5, 2.0));
    return {E::scalar(m, s), E(m), E(m), E::scalar(m, 1 / s)};
  }
  E v(m);
  v[0] = uniform_real(rng, -1, 1);
  for (int i = 1; i <= m; ++i) v[hypsym::Mask{1} << (i - 1)] = uniform_real(rng, -1, 1);
  v *= 1.0 / v.norm();
  return {v, E(m), E(m), v.bar().star()};
}

inline hypsym::VahlenMatrix<double> random_vahlen(Rng& rng, int m, int length = 6) {
  auto g = hypsym::VahlenMatrix<double>::identity(m);
  for (int k = 0; k < length; ++k) g = g * random_generator(rng, m);
  return g;
}

inline hypsym::UpperHalfPoint random_point(Rng& rng, int m) {
  std::vector<double> x(static_cast<std::size_t>(m) + 1);
  for (auto& c : x) c = uniform_real(rng, -1, 1);
  return hypsym::UpperHalfPoint::from_coords(x, uniform_real(rng, 0.3, 3.0));
}

}  // namespace testing
