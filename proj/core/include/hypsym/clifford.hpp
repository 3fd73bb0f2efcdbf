#pragma once

// Clifford algebra C_n over the negative definite form q = -I_n.
//
// An element is a table of 2^n coefficients indexed by subset masks
// M of {1..n}: bit (i-1) of M set means e_i is a factor of e_M. The
// multiplication kernel is shared by every scalar backend (int64 for exact
// law checks, Rational for group enumeration, double on the analytic path).

#include "hypsym/errors.hpp"
#include "hypsym/scalar.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <type_traits>
#include <vector>

namespace hypsym {

inline constexpr int kMaxCliffordDim = 8;

using Mask = std::uint32_t;

namespace detail {

// Sign s with e_M e_N = s e_{M xor N}: one factor -1 per transposition
// needed to sort the concatenated index word, and one per shared index
// (e_i^2 = -1).
constexpr int compute_basis_sign(Mask m, Mask n) {
  int swaps = 0;
  for (int i = 0; i < kMaxCliffordDim; ++i) {
    if ((n >> i) & 1u) {
      swaps += std::popcount(m >> (i + 1));
    }
  }
  swaps += std::popcount(m & n);
  return (swaps % 2 == 0) ? 1 : -1;
}

struct SignTable {
  static constexpr std::size_t kSize = std::size_t{1} << kMaxCliffordDim;
  std::array<std::int8_t, kSize * kSize> sign{};
  SignTable() {
    for (Mask m = 0; m < kSize; ++m)
      for (Mask n = 0; n < kSize; ++n)
        sign[m * kSize + n] = static_cast<std::int8_t>(compute_basis_sign(m, n));
  }
};

inline const SignTable& sign_table() {
  static const SignTable table;
  return table;
}

}  // namespace detail

inline int basis_product_sign(Mask m, Mask n) {
  return detail::sign_table().sign[m * detail::SignTable::kSize + n];
}

// (-1)^{|M|(|M|+1)/2}
inline constexpr int bar_sign(Mask m) {
  const int k = std::popcount(m);
  return ((k * (k + 1) / 2) % 2 == 0) ? 1 : -1;
}

// (-1)^{|M|(|M|-1)/2}
inline constexpr int star_sign(Mask m) {
  const int k = std::popcount(m);
  return ((k * (k - 1) / 2) % 2 == 0) ? 1 : -1;
}

enum class Involution { Bar, Star };

namespace detail {

#ifdef __SIZEOF_INT128__
using Wide = __int128;

inline Wide wide_gcd(Wide a, Wide b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    const Wide t = a % b;
    a = b;
    b = t;
  }
  return a;
}

inline bool fits_int64(Wide v) { return v >= INT64_MIN && v <= INT64_MAX; }

// Integer numerators over one common denominator; false if anything leaves 64 bits.
inline bool common_denominator(const std::vector<Rational>& v, std::vector<std::int64_t>& nums, std::int64_t& den,
                               std::int64_t& max_abs) {
  Wide d = 1;
  for (const auto& r : v) {
    const std::int64_t q = r.denominator();
    if (q == 1) continue;
    const Wide g = wide_gcd(d, q);
    d = d / g * q;
    if (!fits_int64(d)) return false;
  }
  nums.resize(v.size());
  max_abs = 0;
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Wide n = static_cast<Wide>(v[i].numerator()) * (d / v[i].denominator());
    if (!fits_int64(n)) return false;
    nums[i] = static_cast<std::int64_t>(n);
    max_abs = std::max<std::int64_t>(max_abs, nums[i] < 0 ? -nums[i] : nums[i]);
  }
  den = static_cast<std::int64_t>(d);
  return true;
}

// Exact rational product with 128-bit accumulation; false means use the generic path.
inline bool rational_product(const std::vector<Rational>& x, const std::vector<Rational>& y, std::vector<Rational>& out) {
  std::vector<std::int64_t> xn, yn;
  std::int64_t dx = 1, dy = 1, mx = 0, my = 0;
  if (!common_denominator(x, xn, dx, mx) || !common_denominator(y, yn, dy, my)) return false;
  const std::size_t size = x.size();
  if (static_cast<double>(mx) * static_cast<double>(my) * static_cast<double>(size) > 1e37) return false;
  std::vector<Wide> acc(size, 0);
  for (Mask m = 0; m < size; ++m) {
    if (xn[m] == 0) continue;
    for (Mask n = 0; n < size; ++n) {
      if (yn[n] == 0) continue;
      const Wide prod = static_cast<Wide>(xn[m]) * yn[n];
      acc[m ^ n] += basis_product_sign(m, n) > 0 ? prod : -prod;
    }
  }
  const Wide d = static_cast<Wide>(dx) * dy;
  for (std::size_t i = 0; i < size; ++i) {
    if (acc[i] == 0) {
      out[i] = Rational(0);
      continue;
    }
    const Wide g = wide_gcd(acc[i], d);
    const Wide num = acc[i] / g, q = d / g;
    if (!fits_int64(num) || !fits_int64(q)) return false;
    out[i] = Rational(static_cast<std::int64_t>(num), static_cast<std::int64_t>(q));
  }
  return true;
}
#else
inline bool rational_product(const std::vector<Rational>&, const std::vector<Rational>&, std::vector<Rational>&) {
  return false;
}
#endif

}  // namespace detail

template <class T>
class CliffordElement {
 public:
  using value_type = T;

  CliffordElement() : CliffordElement(0) {}

  explicit CliffordElement(int dim) : dim_(dim) {
    if (dim < 0 || dim > kMaxCliffordDim)
      throw DimensionMismatch("clifford dimension out of range: " + std::to_string(dim));
    coeffs_.assign(std::size_t{1} << dim, T(0));
  }

  CliffordElement(int dim, std::vector<T> coeffs) : dim_(dim), coeffs_(std::move(coeffs)) {
    if (dim < 0 || dim > kMaxCliffordDim || coeffs_.size() != (std::size_t{1} << dim))
      throw DimensionMismatch("coefficient table does not match dimension");
  }

  static CliffordElement scalar(int dim, T value) {
    CliffordElement x(dim);
    x.coeffs_[0] = value;
    return x;
  }

  static CliffordElement basis(int dim, Mask mask, T value = T(1)) {
    CliffordElement x(dim);
    if (mask >= x.coeffs_.size())
      throw DimensionMismatch("basis mask uses an index beyond the dimension");
    x.coeffs_[mask] = value;
    return x;
  }

  // Element of V_n from coordinates (x_0, x_1, ..., x_n) in the basis 1, e_1, ..., e_n.
  static CliffordElement vector(int dim, std::span<const T> coords) {
    if (coords.size() != static_cast<std::size_t>(dim) + 1)
      throw DimensionMismatch("vector needs dim + 1 coordinates");
    CliffordElement x(dim);
    x.coeffs_[0] = coords[0];
    for (int i = 1; i <= dim; ++i) x.coeffs_[Mask{1} << (i - 1)] = coords[i];
    return x;
  }

  int dim() const { return dim_; }
  std::size_t size() const { return coeffs_.size(); }
  const std::vector<T>& coeffs() const { return coeffs_; }
  const T& operator[](Mask m) const { return coeffs_.at(m); }
  T& operator[](Mask m) { return coeffs_.at(m); }

  T scalar_part() const { return coeffs_[0]; }

  // Coordinates (x_0, ..., x_n) of the V_n component.
  std::vector<T> vector_coords() const {
    std::vector<T> out(static_cast<std::size_t>(dim_) + 1);
    out[0] = coeffs_[0];
    for (int i = 1; i <= dim_; ++i) out[i] = coeffs_[Mask{1} << (i - 1)];
    return out;
  }

  bool is_zero(double tol = default_tol()) const {
    for (const auto& c : coeffs_)
      if (!ScalarTraits<T>::is_zero(c, tol)) return false;
    return true;
  }

  bool is_scalar(double tol = default_tol()) const {
    for (std::size_t m = 1; m < coeffs_.size(); ++m)
      if (!ScalarTraits<T>::is_zero(coeffs_[m], tol)) return false;
    return true;
  }

  // Membership in V_n: nothing on masks of size >= 2.
  bool is_vector(double tol = default_tol()) const {
    for (std::size_t m = 0; m < coeffs_.size(); ++m)
      if (std::popcount(static_cast<Mask>(m)) >= 2 && !ScalarTraits<T>::is_zero(coeffs_[m], tol))
        return false;
    return true;
  }

  CliffordElement involute(Involution mode) const {
    CliffordElement out(dim_);
    for (Mask m = 0; m < coeffs_.size(); ++m) {
      const int s = mode == Involution::Bar ? bar_sign(m) : star_sign(m);
      out.coeffs_[m] = s > 0 ? coeffs_[m] : -coeffs_[m];
    }
    return out;
  }
  CliffordElement bar() const { return involute(Involution::Bar); }
  CliffordElement star() const { return involute(Involution::Star); }

  // Grade involution e_M -> (-1)^{|M|} e_M; bar = star composed with it.
  CliffordElement grade_involution() const {
    CliffordElement out(dim_);
    for (Mask m = 0; m < coeffs_.size(); ++m)
      out.coeffs_[m] = (std::popcount(m) % 2 == 0) ? coeffs_[m] : -coeffs_[m];
    return out;
  }

  T norm_squared() const {
    T acc(0);
    for (const auto& c : coeffs_) acc += c * c;
    return acc;
  }
  double norm() const { return std::sqrt(to_double(norm_squared())); }

  CliffordElement& operator+=(const CliffordElement& o) {
    check_dim(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
    return *this;
  }
  CliffordElement& operator-=(const CliffordElement& o) {
    check_dim(o);
    for (std::size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
    return *this;
  }
  CliffordElement& operator*=(const T& s) {
    for (auto& c : coeffs_) c *= s;
    return *this;
  }

  friend CliffordElement operator+(CliffordElement a, const CliffordElement& b) { return a += b; }
  friend CliffordElement operator-(CliffordElement a, const CliffordElement& b) { return a -= b; }
  friend CliffordElement operator-(CliffordElement a) {
    for (auto& c : a.coeffs_) c = -c;
    return a;
  }
  friend CliffordElement operator*(CliffordElement a, const T& s) { return a *= s; }
  friend CliffordElement operator*(const T& s, CliffordElement a) { return a *= s; }

  friend CliffordElement operator*(const CliffordElement& x, const CliffordElement& y) {
    x.check_dim(y);
    CliffordElement out(x.dim_);
    if constexpr (std::is_same_v<T, Rational>) {
      if (detail::rational_product(x.coeffs_, y.coeffs_, out.coeffs_)) return out;
      out = CliffordElement(x.dim_);
    }
    const std::size_t size = x.coeffs_.size();
    for (Mask m = 0; m < size; ++m) {
      if (ScalarTraits<T>::is_zero(x.coeffs_[m], 0.0)) continue;
      for (Mask n = 0; n < size; ++n) {
        if (ScalarTraits<T>::is_zero(y.coeffs_[n], 0.0)) continue;
        T prod = x.coeffs_[m] * y.coeffs_[n];
        if (basis_product_sign(m, n) > 0)
          out.coeffs_[m ^ n] += prod;
        else
          out.coeffs_[m ^ n] -= prod;
      }
    }
    return out;
  }

  friend bool operator==(const CliffordElement& a, const CliffordElement& b) {
    return a.dim_ == b.dim_ && a.coeffs_ == b.coeffs_;
  }

  static constexpr double default_tol() {
    if constexpr (ScalarTraits<T>::exact)
      return 0.0;
    else
      return ScalarTraits<T>::tolerance;
  }

 private:
  void check_dim(const CliffordElement& o) const {
    if (o.dim_ != dim_)
      throw DimensionMismatch("clifford operands have dimensions " + std::to_string(dim_) +
                              " and " + std::to_string(o.dim_));
  }

  int dim_;
  std::vector<T> coeffs_;
};

template <class T>
CliffordElement<T> multiply(const CliffordElement<T>& x, const CliffordElement<T>& y) {
  return x * y;
}

template <class T>
CliffordElement<T> involute(const CliffordElement<T>& x, Involution mode) {
  return x.involute(mode);
}

template <class T>
double norm(const CliffordElement<T>& x) {
  return x.norm();
}

// <v, w> = (v bar(w) + bar(v) w) / 2 on V_n; equals the coordinate dot product.
template <class T>
T inner_product(const CliffordElement<T>& v, const CliffordElement<T>& w) {
  if (v.dim() != w.dim()) throw DimensionMismatch("inner product operands differ in dimension");
  if (!v.is_vector() || !w.is_vector())
    throw NotInVectorSpace("inner product is only defined on V_n");
  CliffordElement<T> sym = v * w.bar() + v.bar() * w;
  if constexpr (has_division_v<T>)
    return sym.scalar_part() / T(2);
  else
    return sym.scalar_part() / 2;
}

// Inverse of an element of the Clifford group T_n. The certificate for
// membership is that x bar(x) is a positive scalar; the inverse is then
// bar(x) / (x bar(x)).
template <class T>
CliffordElement<T> invert_clifford_group(const CliffordElement<T>& x,
                                         double tol = CliffordElement<T>::default_tol()) {
  static_assert(has_division_v<T>, "inversion needs a field backend");
  const CliffordElement<T> xb = x.bar();
  const CliffordElement<T> p = x * xb;
  if (!p.is_scalar(tol)) throw NotInCliffordGroup("x * bar(x) is not a scalar");
  const T lambda = p.scalar_part();
  if (!(to_double(lambda) > tol) || ScalarTraits<T>::is_zero(lambda, 0.0))
    throw NotInCliffordGroup("x * bar(x) is not positive");
  CliffordElement<T> out = xb;
  for (Mask m = 0; m < out.size(); ++m) out[m] = out[m] / lambda;
  return out;
}

// Certificate used for membership condition (i) of the Vahlen group.
template <class T>
bool passes_clifford_group_certificate(const CliffordElement<T>& x,
                                       double tol = CliffordElement<T>::default_tol()) {
  const CliffordElement<T> p = x * x.bar();
  return p.is_scalar(tol) && to_double(p.scalar_part()) > tol &&
         !ScalarTraits<T>::is_zero(p.scalar_part(), 0.0);
}

template <class T, class U>
CliffordElement<U> convert(const CliffordElement<T>& x) {
  std::vector<U> c(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    if constexpr (std::is_same_v<U, double>)
      c[i] = to_double(x.coeffs()[i]);
    else
      c[i] = U(x.coeffs()[i]);
  }
  return CliffordElement<U>(x.dim(), std::move(c));
}

std::string to_string(const CliffordElement<double>& x);

}  // namespace hypsym
