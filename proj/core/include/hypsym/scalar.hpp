#pragma once

#include <boost/rational.hpp>

#include <cmath>
#include <cstdint>
#include <type_traits>

namespace hypsym {

using Rational = boost::rational<std::int64_t>;

// Scalar backends for the Clifford kernel. Exact types (integers, rationals)
// compare against zero exactly; doubles use an absolute tolerance.
template <class T>
struct ScalarTraits;

template <>
struct ScalarTraits<double> {
  static constexpr bool exact = false;
  static constexpr double tolerance = 1e-9;
  static bool is_zero(double x, double tol = tolerance) { return std::abs(x) <= tol; }
  static double to_double(double x) { return x; }
};

template <>
struct ScalarTraits<std::int64_t> {
  static constexpr bool exact = true;
  static bool is_zero(std::int64_t x, double = 0.0) { return x == 0; }
  static double to_double(std::int64_t x) { return static_cast<double>(x); }
};

template <>
struct ScalarTraits<Rational> {
  static constexpr bool exact = true;
  static bool is_zero(const Rational& x, double = 0.0) { return x.numerator() == 0; }
  static double to_double(const Rational& x) {
    return static_cast<double>(x.numerator()) / static_cast<double>(x.denominator());
  }
};

template <class T>
double to_double(const T& x) {
  return ScalarTraits<T>::to_double(x);
}

template <class T>
inline constexpr bool has_division_v = !std::is_integral_v<T>;

}  // namespace hypsym
