#pragma once

// Vahlen matrices SV_{n-1} acting on upper half-space H^{n+1}.
//
// Entries live in C_{n-1}; a point P = x + y e_n has boundary coordinate
// x in V_{n-1} (identified with R^n) and height y > 0. For n - 1 = 0 this is
// SL_2(R) on H^2 and for n - 1 = 1 it is SL_2(C) on H^3.

#include "hypsym/clifford.hpp"

#include <optional>
#include <string>

namespace hypsym {

template <class T>
struct VahlenMatrix {
  CliffordElement<T> a, b, c, d;

  int entry_dim() const { return a.dim(); }

  static VahlenMatrix identity(int dim) {
    return {CliffordElement<T>::scalar(dim, T(1)), CliffordElement<T>(dim), CliffordElement<T>(dim),
            CliffordElement<T>::scalar(dim, T(1))};
  }

  friend VahlenMatrix operator*(const VahlenMatrix& x, const VahlenMatrix& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c,
            x.c * y.b + x.d * y.d};
  }
  friend VahlenMatrix operator-(const VahlenMatrix& x) { return {-x.a, -x.b, -x.c, -x.d}; }
  friend bool operator==(const VahlenMatrix& x, const VahlenMatrix& y) {
    return x.a == y.a && x.b == y.b && x.c == y.c && x.d == y.d;
  }
};

enum class MembershipCondition { None, Dimension, CliffordGroup, VectorProducts, Determinant };

struct MembershipResult {
  bool ok = true;
  MembershipCondition failed = MembershipCondition::None;
  std::string reason;
  explicit operator bool() const { return ok; }
};

// Conditions, checked in order:
//   (i)   nonzero entries pass the Clifford-group certificate (heuristic for n-1 > 2),
//   (ii)  bar(a) b and bar(c) d lie in V_{n-1},
//   (iii) a star(d) - b star(c) = 1.
template <class T>
MembershipResult check_membership(const VahlenMatrix<T>& m,
                                  double tol = CliffordElement<T>::default_tol()) {
  const int dim = m.a.dim();
  if (m.b.dim() != dim || m.c.dim() != dim || m.d.dim() != dim)
    return {false, MembershipCondition::Dimension, "entries have different dimensions"};
  const CliffordElement<T>* entries[] = {&m.a, &m.b, &m.c, &m.d};
  const char* names[] = {"a", "b", "c", "d"};
  for (int i = 0; i < 4; ++i) {
    if (!entries[i]->is_zero(tol) && !passes_clifford_group_certificate(*entries[i], tol))
      return {false, MembershipCondition::CliffordGroup,
              std::string("(i) entry ") + names[i] + " is not in the Clifford group"};
  }
  if (!(m.a.bar() * m.b).is_vector(tol))
    return {false, MembershipCondition::VectorProducts, "(ii) bar(a) b is not in V"};
  if (!(m.c.bar() * m.d).is_vector(tol))
    return {false, MembershipCondition::VectorProducts, "(ii) bar(c) d is not in V"};
  CliffordElement<T> det = m.a * m.d.star() - m.b * m.c.star();
  det[0] -= T(1);
  if (!det.is_zero(tol))
    return {false, MembershipCondition::Determinant, "(iii) a d* - b c* != 1"};
  return {};
}

// (a b; c d)^{-1} = (d* -b*; -c* a*)
template <class T>
VahlenMatrix<T> invert_matrix(const VahlenMatrix<T>& m,
                              double tol = CliffordElement<T>::default_tol()) {
  if (auto r = check_membership(m, tol); !r) throw MembershipFailure(r.reason);
  return {m.d.star(), -m.b.star(), -m.c.star(), m.a.star()};
}

template <class T, class U>
VahlenMatrix<U> convert(const VahlenMatrix<T>& m) {
  return {convert<T, U>(m.a), convert<T, U>(m.b), convert<T, U>(m.c), convert<T, U>(m.d)};
}

struct UpperHalfPoint {
  CliffordElement<double> x;  // in V_{n-1}
  double y = 1.0;

  UpperHalfPoint() = default;
  UpperHalfPoint(CliffordElement<double> x_, double y_);
  // Convenience: x from coordinates (x_0, ..., x_{n-1}).
  static UpperHalfPoint from_coords(std::span<const double> x, double y);
  int boundary_dim() const { return x.dim() + 1; }
};

// Height after the action, y / (|cx + d|^2 + |c|^2 y^2).
double height_after_action(const VahlenMatrix<double>& g, const UpperHalfPoint& p);

// x(gP) = ((ax + b) bar(cx + d) + a bar(c) y^2) / (|cx + d|^2 + |c|^2 y^2) and the height above.
UpperHalfPoint act_on_point(const VahlenMatrix<double>& g, const UpperHalfPoint& p);

template <class T>
UpperHalfPoint act_on_point(const VahlenMatrix<T>& g, const UpperHalfPoint& p) {
  return act_on_point(convert<T, double>(g), p);
}

// A boundary point of H^{n+1}: a point of V_{n-1}, or infinity (nullopt).
using BoundaryPoint = std::optional<CliffordElement<double>>;

// g(inf) = a c^{-1} (or inf when c = 0); finite x maps to (ax + b)(cx + d)^{-1}.
BoundaryPoint act_on_boundary(const VahlenMatrix<double>& g, const BoundaryPoint& point,
                              double tol = 1e-12);

double hyperbolic_distance(const UpperHalfPoint& p, const UpperHalfPoint& q);

}  // namespace hypsym
