#include "hypsym/vahlen.hpp"

#include <cmath>

namespace hypsym {

UpperHalfPoint::UpperHalfPoint(CliffordElement<double> x_, double y_) : x(std::move(x_)), y(y_) {
  if (!(y > 0.0)) throw DomainError("upper half-space point needs y > 0");
  if (!x.is_vector()) throw NotInVectorSpace("boundary coordinate must lie in V_{n-1}");
}

UpperHalfPoint UpperHalfPoint::from_coords(std::span<const double> x, double y) {
  if (x.empty()) throw DimensionMismatch("boundary coordinate needs at least one component");
  const int dim = static_cast<int>(x.size()) - 1;
  return {CliffordElement<double>::vector(dim, x), y};
}

namespace {

void check_point_dim(const VahlenMatrix<double>& g, const UpperHalfPoint& p) {
  if (g.entry_dim() != p.x.dim())
    throw DimensionMismatch("matrix entries and point live in different dimensions");
}

}  // namespace

double height_after_action(const VahlenMatrix<double>& g, const UpperHalfPoint& p) {
  check_point_dim(g, p);
  const CliffordElement<double> cxd = g.c * p.x + g.d;
  const double denom = cxd.norm_squared() + g.c.norm_squared() * p.y * p.y;
  return p.y / denom;
}

UpperHalfPoint act_on_point(const VahlenMatrix<double>& g, const UpperHalfPoint& p) {
  check_point_dim(g, p);
  const double y2 = p.y * p.y;
  const CliffordElement<double> cxd = g.c * p.x + g.d;
  const double denom = cxd.norm_squared() + g.c.norm_squared() * y2;
  CliffordElement<double> num = (g.a * p.x + g.b) * cxd.bar() + (g.a * g.c.bar()) * y2;
  num *= 1.0 / denom;
  // Round-off can leave tiny components outside V_{n-1}; the exact value has none.
  for (Mask m = 0; m < num.size(); ++m)
    if (std::popcount(m) >= 2) num[m] = 0.0;
  return {std::move(num), p.y / denom};
}

BoundaryPoint act_on_boundary(const VahlenMatrix<double>& g, const BoundaryPoint& point,
                              double tol) {
  CliffordElement<double> num(g.entry_dim());
  CliffordElement<double> den(g.entry_dim());
  if (!point) {
    num = g.a;
    den = g.c;
  } else {
    if (point->dim() != g.entry_dim())
      throw DimensionMismatch("boundary point dimension differs from the matrix");
    num = g.a * *point + g.b;
    den = g.c * *point + g.d;
  }
  if (den.is_zero(tol)) return std::nullopt;
  CliffordElement<double> out = num * invert_clifford_group(den, tol);
  for (Mask m = 0; m < out.size(); ++m)
    if (std::popcount(m) >= 2) out[m] = 0.0;
  return out;
}

double hyperbolic_distance(const UpperHalfPoint& p, const UpperHalfPoint& q) {
  if (p.x.dim() != q.x.dim()) throw DimensionMismatch("points live in different dimensions");
  const double dx2 = (p.x - q.x).norm_squared();
  const double dy = p.y - q.y;
  // cosh d = 1 + r / (2 yp yq); the asinh form stays accurate for nearby points.
  const double r = std::sqrt(dx2 + dy * dy);
  return 2.0 * std::asinh(r / (2.0 * std::sqrt(p.y * q.y)));
}

}  // namespace hypsym
