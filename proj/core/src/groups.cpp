#include "hypsym/groups.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <sstream>

namespace hypsym {

GroupDescriptor GroupDescriptor::gamma0(std::int64_t level, SignConvention sign) {
  if (level < 1) throw InvalidDescriptor("Gamma0 level must be >= 1");
  GroupDescriptor g;
  g.kind_ = GroupKind::RationalGamma0;
  g.level_ = level;
  g.level_generator_ = {level, 0};
  g.sign_ = sign;
  g.boundary_dim_ = 1;
  g.lattice_basis_ = {{1.0}};
  // -I lies in Gamma0(N) for every N.
  g.index_inf_ = sign == SignConvention::BothSigns ? 2 : 1;
  g.counting_multiplicity_ = sign == SignConvention::BothSigns ? 2.0 : 1.0;
  return g;
}

GroupDescriptor GroupDescriptor::gamma1(std::int64_t level, SignConvention sign) {
  if (level < 1) throw InvalidDescriptor("Gamma1 level must be >= 1");
  GroupDescriptor g;
  g.kind_ = GroupKind::RationalGamma1;
  g.level_ = level;
  g.level_generator_ = {level, 0};
  g.sign_ = sign;
  g.boundary_dim_ = 1;
  // b is divisible by N, so the parabolic translations are N Z.
  g.lattice_basis_ = {{static_cast<double>(level)}};
  const bool has_minus_identity = level <= 2;
  const double kappa = has_minus_identity ? 2.0 : 1.0;
  const double listed = sign == SignConvention::BothSigns ? 1.0 : 0.5;
  g.index_inf_ = (has_minus_identity && sign == SignConvention::BothSigns) ? 2 : 1;
  g.counting_multiplicity_ = kappa * listed;
  return g;
}

GroupDescriptor GroupDescriptor::imag_quad_gamma0(int discriminant, QuadInt level_generator) {
  GroupDescriptor g;
  g.kind_ = GroupKind::ImagQuadGamma0;
  g.ring_ = QuadraticRing::imaginary(discriminant);
  if (level_generator.is_zero()) throw InvalidDescriptor("level generator must be nonzero");
  g.level_generator_ = level_generator;
  g.level_ = g.ring_.norm(level_generator);
  g.boundary_dim_ = 2;
  const auto w = g.ring_.omega();
  g.lattice_basis_ = {{1.0, 0.0}, {w.real(), w.imag()}};
  g.index_inf_ = static_cast<int>(g.ring_.units().size());
  g.counting_multiplicity_ = 2.0;
  return g;
}

GroupDescriptor GroupDescriptor::generic(std::vector<VahlenMatrix<Rational>> generators,
                                         int entry_dim) {
  GroupDescriptor g;
  g.kind_ = GroupKind::GenericWordGroup;
  for (const auto& m : generators) {
    if (m.entry_dim() != entry_dim) throw InvalidDescriptor("generator dimension mismatch");
    if (auto r = check_membership(m); !r) throw InvalidDescriptor("generator: " + r.reason);
  }
  g.generators_ = std::move(generators);
  g.boundary_dim_ = entry_dim + 1;
  g.lattice_basis_.assign(g.boundary_dim_, std::vector<double>(g.boundary_dim_, 0.0));
  for (int i = 0; i < g.boundary_dim_; ++i) g.lattice_basis_[i][i] = 1.0;
  return g;
}

double GroupDescriptor::lattice_covolume() const {
  const auto& b = lattice_basis_;
  if (b.size() == 1) return std::abs(b[0][0]);
  if (b.size() == 2) return std::abs(b[0][0] * b[1][1] - b[0][1] * b[1][0]);
  // General case via Gaussian elimination.
  auto m = b;
  const std::size_t n = m.size();
  double det = 1.0;
  for (std::size_t i = 0; i < n; ++i) {
    std::size_t piv = i;
    for (std::size_t r = i + 1; r < n; ++r)
      if (std::abs(m[r][i]) > std::abs(m[piv][i])) piv = r;
    if (m[piv][i] == 0.0) return 0.0;
    if (piv != i) {
      std::swap(m[piv], m[i]);
      det = -det;
    }
    det *= m[i][i];
    for (std::size_t r = i + 1; r < n; ++r) {
      const double f = m[r][i] / m[i][i];
      for (std::size_t k = i; k < n; ++k) m[r][k] -= f * m[i][k];
    }
  }
  return std::abs(det);
}

bool GroupDescriptor::contains(QuadInt a, QuadInt b, QuadInt c, QuadInt d) const {
  const auto& R = ring_;
  if (!(R.sub(R.mul(a, d), R.mul(b, c)) == QuadInt{1, 0})) return false;
  switch (kind_) {
    case GroupKind::RationalGamma0:
      return c.y == 0 && c.x % level_ == 0;
    case GroupKind::RationalGamma1:
      return c.x % level_ == 0 && b.x % level_ == 0 && pos_mod(a.x - 1, level_) == 0 &&
             pos_mod(d.x - 1, level_) == 0;
    case GroupKind::ImagQuadGamma0:
      return R.divides(level_generator_, c);
    case GroupKind::GenericWordGroup:
      return false;
  }
  return false;
}

std::string GroupDescriptor::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case GroupKind::RationalGamma0: out << "Gamma0(" << level_ << ")"; break;
    case GroupKind::RationalGamma1: out << "Gamma1(" << level_ << ")"; break;
    case GroupKind::ImagQuadGamma0:
      out << "Gamma0(" << ring_.to_string(level_generator_) << ") over O_K, D = "
          << ring_.discriminant();
      break;
    case GroupKind::GenericWordGroup:
      out << "word group with " << generators_.size() << " generators";
      break;
  }
  return out.str();
}

VahlenMatrix<double> to_vahlen(const GroupDescriptor& desc, const DoubleCosetRep& rep) {
  const auto& R = desc.ring();
  const int dim = R.is_integers() ? 0 : 1;
  auto conv = [&](QuadInt v) {
    const auto coords = R.to_real_vector(v);
    if (dim == 0) return CliffordElement<double>::scalar(0, coords[0]);
    return CliffordElement<double>::vector(1, coords);
  };
  return {conv(rep.a), conv(rep.b), conv(rep.c), conv(rep.d)};
}

VahlenMatrix<Rational> to_vahlen_exact(const GroupDescriptor& desc, const DoubleCosetRep& rep) {
  const auto& R = desc.ring();
  if (R.is_integers()) {
    auto s = [](QuadInt v) { return CliffordElement<Rational>::scalar(0, Rational(v.x)); };
    return {s(rep.a), s(rep.b), s(rep.c), s(rep.d)};
  }
  if (R.discriminant() != -4)
    throw UnsupportedVariant("exact Clifford entries need a rational basis (Z or Z[i])");
  auto g = [](QuadInt v) {
    const Rational coords[] = {Rational(v.x), Rational(v.y)};
    return CliffordElement<Rational>::vector(1, coords);
  };
  return {g(rep.a), g(rep.b), g(rep.c), g(rep.d)};
}

std::vector<QuadInt> lower_left_entries(const GroupDescriptor& desc, double x_max) {
  std::vector<QuadInt> out;
  if (x_max <= 0.0) return out;
  switch (desc.kind()) {
    case GroupKind::RationalGamma0:
    case GroupKind::RationalGamma1: {
      const std::int64_t n = desc.level();
      const auto cmax = static_cast<std::int64_t>(std::floor(x_max + 1e-12));
      for (std::int64_t c = n; c <= cmax; c += n) {
        out.push_back({c, 0});
        if (desc.sign_convention() == SignConvention::BothSigns) out.push_back({-c, 0});
      }
      return out;
    }
    case GroupKind::ImagQuadGamma0: {
      const auto& R = desc.ring();
      const double bound = x_max * x_max + 1e-9;
      const double w_im = R.omega().imag();
      const double w_re = R.omega().real();
      const auto ymax = static_cast<std::int64_t>(std::floor(x_max / w_im + 1e-9));
      for (std::int64_t y = -ymax; y <= ymax; ++y) {
        const double rest = bound - (w_im * y) * (w_im * y);
        if (rest < 0) continue;
        const double r = std::sqrt(rest);
        const double center = -w_re * static_cast<double>(y);
        const auto xlo = static_cast<std::int64_t>(std::floor(center - r)) - 1;
        const auto xhi = static_cast<std::int64_t>(std::ceil(center + r)) + 1;
        for (std::int64_t x = xlo; x <= xhi; ++x) {
          const QuadInt c{x, y};
          if (c.is_zero()) continue;
          if (static_cast<double>(R.norm(c)) > bound) continue;
          if (!R.divides(desc.level_generator(), c)) continue;
          out.push_back(c);
        }
      }
      std::sort(out.begin(), out.end(), [&](QuadInt u, QuadInt v) {
        const auto nu = R.norm(u), nv = R.norm(v);
        if (nu != nv) return nu < nv;
        return u < v;
      });
      return out;
    }
    case GroupKind::GenericWordGroup:
      throw UnsupportedVariant("generic word groups are explored with word_orbit");
  }
  return out;
}

std::vector<DoubleCosetRep> reps_for_c(const GroupDescriptor& desc, QuadInt c) {
  std::vector<DoubleCosetRep> out;
  if (c.is_zero()) throw DomainError("double cosets with c = 0 have no (a, c) representative");
  switch (desc.kind()) {
    case GroupKind::RationalGamma0: {
      if (c.x % desc.level() != 0) return out;
      const std::int64_t m = std::abs(c.x);
      for (std::int64_t a = 0; a < m; ++a) {
        if (std::gcd(a, m) != 1) continue;
        const std::int64_t d = inverse_mod(a, m);
        const std::int64_t b = (a * d - 1) / c.x;
        out.push_back({{a, 0}, {b, 0}, c, {d, 0}});
      }
      return out;
    }
    case GroupKind::RationalGamma1: {
      const std::int64_t n = desc.level();
      if (c.x % n != 0) return out;
      const std::int64_t m = std::abs(c.x) * n;
      for (std::int64_t a = 1 % n; a < m; a += n) {
        if (std::gcd(a, m) != 1) continue;
        const std::int64_t d = inverse_mod(a, m);
        const std::int64_t b = (a * d - 1) / c.x;
        out.push_back({{a, 0}, {b, 0}, c, {d, 0}});
      }
      return out;
    }
    case GroupKind::ImagQuadGamma0: {
      const auto& R = desc.ring();
      if (!R.divides(desc.level_generator(), c)) return out;
      const auto box = R.residue_box(c);
      out.reserve(static_cast<std::size_t>(box.box_a * box.box_c));
      for (std::int64_t j = 0; j < box.box_c; ++j) {
        for (std::int64_t i = 0; i < box.box_a; ++i) {
          const QuadInt a{i, j};
          QuadInt s, t;
          const QuadInt g = R.xgcd(a, c, s, t);
          if (!R.is_unit(g)) continue;
          const QuadInt ginv = R.conj(g);
          const QuadInt d = R.reduce(R.mul(ginv, s), c, box);
          const QuadInt b = R.exact_div(R.sub(R.mul(a, d), QuadInt{1, 0}), c);
          out.push_back({a, b, c, d});
        }
      }
      return out;
    }
    case GroupKind::GenericWordGroup:
      throw UnsupportedVariant("generic word groups are explored with word_orbit");
  }
  return out;
}

void for_each_double_coset(const GroupDescriptor& desc, double x_max,
                           const std::function<bool(const DoubleCosetRep&)>& visit) {
  for (const QuadInt c : lower_left_entries(desc, x_max))
    for (const auto& rep : reps_for_c(desc, c))
      if (!visit(rep)) return;
}

std::vector<DoubleCosetRep> enumerate_double_cosets(const GroupDescriptor& desc, double x_max) {
  std::vector<DoubleCosetRep> out;
  for_each_double_coset(desc, x_max, [&](const DoubleCosetRep& r) {
    out.push_back(r);
    return true;
  });
  return out;
}

std::size_t count_reps_for_c(const GroupDescriptor& desc, QuadInt c) {
  if (c.is_zero()) throw DomainError("double cosets with c = 0 have no (a, c) representative");
  switch (desc.kind()) {
    case GroupKind::RationalGamma0:
      return c.x % desc.level() != 0 ? 0 : static_cast<std::size_t>(euler_phi(std::abs(c.x)));
    case GroupKind::RationalGamma1: {
      // a = 1 mod N is spread evenly over the units mod |c| N by CRT
      const std::int64_t n = desc.level();
      if (c.x % n != 0) return 0;
      return static_cast<std::size_t>(euler_phi(std::abs(c.x) * n) / euler_phi(n));
    }
    default:
      return reps_for_c(desc, c).size();
  }
}

std::size_t count_double_cosets(const GroupDescriptor& desc, double x_max) {
  std::size_t n = 0;
  for (const QuadInt c : lower_left_entries(desc, x_max)) n += count_reps_for_c(desc, c);
  return n;
}

Completion complete_matrix(const GroupDescriptor& desc, QuadInt a, QuadInt c) {
  if (c.is_zero()) throw DomainError("completion needs c != 0");
  const auto& R = desc.ring();
  switch (desc.kind()) {
    case GroupKind::RationalGamma0:
    case GroupKind::RationalGamma1: {
      const std::int64_t modulus =
          std::abs(c.x) * (desc.kind() == GroupKind::RationalGamma1 ? desc.level() : 1);
      if (std::gcd(a.x, modulus) != 1 || std::gcd(a.x, c.x) != 1)
        throw NonCoprime("gcd(" + std::to_string(a.x) + ", " + std::to_string(c.x) + ") != 1");
      const std::int64_t d = inverse_mod(a.x, modulus);
      const std::int64_t b = (a.x * d - 1) / c.x;
      if (!desc.contains(a, {b, 0}, c, {d, 0}))
        throw NotInGroup("completed matrix violates the congruence conditions");
      return {{b, 0}, {d, 0}};
    }
    case GroupKind::ImagQuadGamma0: {
      QuadInt s, t;
      const QuadInt g = R.xgcd(a, c, s, t);
      if (!R.is_unit(g)) throw NonCoprime("a and c are not coprime in O_K");
      const QuadInt d = R.reduce(R.mul(R.conj(g), s), c);
      const QuadInt b = R.exact_div(R.sub(R.mul(a, d), QuadInt{1, 0}), c);
      if (!desc.contains(a, b, c, d))
        throw NotInGroup("completed matrix violates the congruence conditions");
      return {b, d};
    }
    case GroupKind::GenericWordGroup:
      throw UnsupportedVariant("completion is not defined for word groups");
  }
  throw UnsupportedVariant("unknown group kind");
}

std::vector<double> CuspPoint::lattice_coords() const {
  std::vector<double> out(num.size());
  for (std::size_t i = 0; i < num.size(); ++i)
    out[i] = static_cast<double>(num[i]) / static_cast<double>(den);
  return out;
}

CuspPoint cusp_point(const GroupDescriptor& desc, const DoubleCosetRep& rep) {
  const auto& R = desc.ring();
  if (rep.c.is_zero()) throw DomainError("cusp point of a c = 0 element is infinity");
  CuspPoint p;
  if (R.is_integers()) {
    const std::int64_t scale = desc.kind() == GroupKind::RationalGamma1 ? desc.level() : 1;
    const std::int64_t den = std::abs(rep.c.x) * scale;
    const std::int64_t num = pos_mod(rep.c.x < 0 ? -rep.a.x : rep.a.x, den);
    const std::int64_t g = std::gcd(num, den);
    p.num = {num / g};
    p.den = den / g;
    return p;
  }
  const std::int64_t n = R.norm(rep.c);
  const QuadInt z = R.mul(rep.a, R.conj(rep.c));
  const std::int64_t u = pos_mod(z.x, n), v = pos_mod(z.y, n);
  const std::int64_t g = std::gcd(std::gcd(u, v), n);
  p.num = {u / g, v / g};
  p.den = n / g;
  return p;
}

std::vector<double> cusp_point_vector(const GroupDescriptor& desc, const CuspPoint& p) {
  const auto& basis = desc.lattice_basis();
  std::vector<double> out(basis.size(), 0.0);
  const auto coords = p.lattice_coords();
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t k = 0; k < out.size(); ++k) out[k] += coords[i] * basis[i][k];
  return out;
}

std::vector<double> DualLattice::vector(std::span<const std::int64_t> coords) const {
  if (coords.size() != basis.size()) throw DimensionMismatch("dual coordinates have wrong rank");
  std::vector<double> out(basis.empty() ? 0 : basis[0].size(), 0.0);
  for (std::size_t i = 0; i < basis.size(); ++i)
    for (std::size_t k = 0; k < out.size(); ++k)
      out[k] += static_cast<double>(coords[i]) * basis[i][k];
  return out;
}

DualLattice dual_lattice(const std::vector<std::vector<double>>& lattice_basis) {
  const std::size_t n = lattice_basis.size();
  for (const auto& row : lattice_basis)
    if (row.size() != n) throw DimensionMismatch("lattice basis must be square");
  // Gauss-Jordan inverse of B (rows are basis vectors); the dual basis is B^{-T}.
  std::vector<std::vector<double>> m = lattice_basis;
  std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1.0;
  double scale = 0.0;
  for (const auto& row : m)
    for (double v : row) scale = std::max(scale, std::abs(v));
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    for (std::size_t r = col + 1; r < n; ++r)
      if (std::abs(m[r][col]) > std::abs(m[piv][col])) piv = r;
    if (std::abs(m[piv][col]) <= 1e-12 * std::max(scale, 1.0))
      throw SingularBasis("lattice basis is singular");
    std::swap(m[piv], m[col]);
    std::swap(inv[piv], inv[col]);
    const double p = m[col][col];
    for (std::size_t k = 0; k < n; ++k) {
      m[col][k] /= p;
      inv[col][k] /= p;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col) continue;
      const double f = m[r][col];
      if (f == 0.0) continue;
      for (std::size_t k = 0; k < n; ++k) {
        m[r][k] -= f * m[col][k];
        inv[r][k] -= f * inv[col][k];
      }
    }
  }
  DualLattice dual;
  dual.basis.assign(n, std::vector<double>(n, 0.0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) dual.basis[i][j] = inv[j][i];
  return dual;
}

void for_each_outcome_rational(std::int64_t level, std::int64_t q_max,
                               const std::function<void(Fraction)>& visit) {
  if (level < 1) throw DomainError("level must be >= 1");
  for (std::int64_t q = level; q <= q_max; q += level)
    for (std::int64_t a = 1; a < q; ++a)
      if (std::gcd(a, q) == 1) visit({a, q});
}

std::vector<Fraction> outcome_space_rationals(std::int64_t level, std::int64_t q_max) {
  std::vector<Fraction> out;
  for_each_outcome_rational(level, q_max, [&](Fraction f) { out.push_back(f); });
  return out;
}

std::size_t outcome_space_size(std::int64_t level, std::int64_t q_max) {
  std::size_t n = 0;
  for (std::int64_t q = level; q <= q_max; q += level)
    n += static_cast<std::size_t>(q == 1 ? 0 : euler_phi(q));
  return n;
}

namespace {

using OrbitKey = std::vector<std::pair<std::int64_t, std::int64_t>>;

OrbitKey key_of(const VahlenMatrix<Rational>& m) {
  OrbitKey key;
  for (const auto* e : {&m.a, &m.b, &m.c, &m.d})
    for (const auto& v : e->coeffs()) key.emplace_back(v.numerator(), v.denominator());
  return key;
}

}  // namespace

std::vector<OrbitElement> word_orbit(const std::vector<VahlenMatrix<Rational>>& generators,
                                     int entry_dim, int max_length) {
  std::vector<VahlenMatrix<Rational>> letters;
  for (const auto& g : generators) {
    letters.push_back(g);
    letters.push_back(invert_matrix(g));
  }
  std::vector<OrbitElement> out;
  std::map<OrbitKey, std::size_t> seen;
  const auto id = VahlenMatrix<Rational>::identity(entry_dim);
  out.push_back({id, 0.0, 0});
  seen.emplace(key_of(id), 0);
  std::size_t frontier_begin = 0;
  for (int len = 1; len <= max_length; ++len) {
    const std::size_t frontier_end = out.size();
    for (std::size_t i = frontier_begin; i < frontier_end; ++i) {
      for (const auto& letter : letters) {
        VahlenMatrix<Rational> p = out[i].matrix * letter;
        auto key = key_of(p);
        if (seen.count(key)) continue;
        seen.emplace(std::move(key), out.size());
        const double cn = p.c.norm();
        out.push_back({std::move(p), cn, len});
      }
    }
    frontier_begin = frontier_end;
  }
  return out;
}

std::vector<OrbitElement> word_orbit(const GroupDescriptor& desc, int max_length) {
  if (desc.kind() != GroupKind::GenericWordGroup)
    throw UnsupportedVariant("word_orbit expects a generator-based descriptor");
  return word_orbit(desc.generators(), desc.boundary_dim() - 1, max_length);
}

}  // namespace hypsym
