#pragma once

// Congruence groups, their double cosets Gamma'_inf \ Gamma / Gamma'_inf, and
// the parabolic lattice with its dual.
//
// Supported groups and representative lists:
//   Gamma0(N) over Z:   c > 0, N | c, a in (Z/c)^*
//   Gamma1(N) over Z:   c > 0, N | c, a in (Z/cN)^*, a = 1 mod N
//   Gamma0(nu) over O_K: c in (nu) \ {0}, a in (O_K/(c))^*
// Generic groups given by generators are only explored by word_orbit().

#include "hypsym/quadratic.hpp"
#include "hypsym/scalar.hpp"
#include "hypsym/vahlen.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hypsym {

enum class GroupKind { RationalGamma0, RationalGamma1, ImagQuadGamma0, GenericWordGroup };

// Which lower-left entries the Z-lists cover. PositiveC lists c > 0 only (one
// representative per projective double coset when -I is in the group);
// BothSigns also lists c < 0, so gamma and -gamma appear separately.
enum class SignConvention { PositiveC, BothSigns };

class GroupDescriptor {
 public:
  static GroupDescriptor gamma0(std::int64_t level, SignConvention sign = SignConvention::PositiveC);
  static GroupDescriptor gamma1(std::int64_t level, SignConvention sign = SignConvention::PositiveC);
  static GroupDescriptor imag_quad_gamma0(int discriminant, QuadInt level_generator = {1, 0});
  static GroupDescriptor generic(std::vector<VahlenMatrix<Rational>> generators, int entry_dim);

  GroupKind kind() const { return kind_; }
  const QuadraticRing& ring() const { return ring_; }
  std::int64_t level() const { return level_; }
  QuadInt level_generator() const { return level_generator_; }
  SignConvention sign_convention() const { return sign_; }
  const std::vector<VahlenMatrix<Rational>>& generators() const { return generators_; }

  // n, the dimension of the boundary R^n.
  int boundary_dim() const { return boundary_dim_; }
  // Rows are the basis vectors of the translation lattice Lambda in R^n.
  const std::vector<std::vector<double>>& lattice_basis() const { return lattice_basis_; }
  double lattice_covolume() const;
  // Number of c = 0 cosets in Gamma'_inf \ Gamma, consistent with the
  // representative list; this is the coefficient of y^s in the Eisenstein series.
  int index_inf() const { return index_inf_; }
  // Representatives listed per projective double coset, times |{+-I} cap Gamma|.
  // This is the factor that multiplies the leading constant of #T(X).
  double counting_multiplicity() const { return counting_multiplicity_; }

  // Congruence predicate on a completed integral matrix.
  bool contains(QuadInt a, QuadInt b, QuadInt c, QuadInt d) const;

  std::string describe() const;

 private:
  GroupDescriptor() : ring_(QuadraticRing::integers()) {}

  GroupKind kind_ = GroupKind::RationalGamma0;
  QuadraticRing ring_;
  std::int64_t level_ = 1;
  QuadInt level_generator_{1, 0};
  SignConvention sign_ = SignConvention::PositiveC;
  std::vector<VahlenMatrix<Rational>> generators_;
  int boundary_dim_ = 1;
  std::vector<std::vector<double>> lattice_basis_;
  int index_inf_ = 1;
  double counting_multiplicity_ = 1.0;
};

struct DoubleCosetRep {
  QuadInt a, b, c, d;

  // For groups over Z the entries are plain integers.
  std::int64_t ia() const { return a.x; }
  std::int64_t ib() const { return b.x; }
  std::int64_t ic() const { return c.x; }
  std::int64_t id() const { return d.x; }
};

VahlenMatrix<double> to_vahlen(const GroupDescriptor& desc, const DoubleCosetRep& rep);
VahlenMatrix<Rational> to_vahlen_exact(const GroupDescriptor& desc, const DoubleCosetRep& rep);

// Lower-left entries with 0 < |c| <= X in enumeration order: ascending by
// norm, then by coordinates (positive before negative over Z).
std::vector<QuadInt> lower_left_entries(const GroupDescriptor& desc, double x_max);

// All representatives with the given lower-left entry, ascending in a.
std::vector<DoubleCosetRep> reps_for_c(const GroupDescriptor& desc, QuadInt c);
// reps_for_c(desc, c).size() without building them (closed form over Z).
std::size_t count_reps_for_c(const GroupDescriptor& desc, QuadInt c);

// Streams T_Gamma(X) in the deterministic order (c, then a). The callback
// returns false to stop early.
void for_each_double_coset(const GroupDescriptor& desc, double x_max,
                           const std::function<bool(const DoubleCosetRep&)>& visit);
std::vector<DoubleCosetRep> enumerate_double_cosets(const GroupDescriptor& desc, double x_max);
std::size_t count_double_cosets(const GroupDescriptor& desc, double x_max);

// Solve a d - b c = 1 with the descriptor's congruence conditions; d is
// reduced to the canonical residue (0 <= d < |c| over Z, or |c| N for Gamma1).
struct Completion {
  QuadInt b, d;
};
Completion complete_matrix(const GroupDescriptor& desc, QuadInt a, QuadInt c);

// gamma(inf) = a c^{-1} reduced into the fundamental parallelogram of Lambda,
// stored exactly as num[i] / den in lattice-basis coordinates in [0, 1).
struct CuspPoint {
  std::vector<std::int64_t> num;
  std::int64_t den = 1;

  std::vector<double> lattice_coords() const;
  friend bool operator==(const CuspPoint&, const CuspPoint&) = default;
};
CuspPoint cusp_point(const GroupDescriptor& desc, const DoubleCosetRep& rep);
// The same point as a vector of R^n.
std::vector<double> cusp_point_vector(const GroupDescriptor& desc, const CuspPoint& p);

struct DualLattice {
  std::vector<std::vector<double>> basis;  // rows

  // mu = sum coords[i] * basis[i]
  std::vector<double> vector(std::span<const std::int64_t> coords) const;
};
DualLattice dual_lattice(const std::vector<std::vector<double>>& lattice_basis);

struct Fraction {
  std::int64_t a = 0;
  std::int64_t q = 1;
  friend bool operator==(const Fraction&, const Fraction&) = default;
};

// Omega_{Q,N} = {a/q : 0 < a < q <= Q, (a, q) = 1, N | q} in (q, a) order.
void for_each_outcome_rational(std::int64_t level, std::int64_t q_max,
                               const std::function<void(Fraction)>& visit);
std::vector<Fraction> outcome_space_rationals(std::int64_t level, std::int64_t q_max);
std::size_t outcome_space_size(std::int64_t level, std::int64_t q_max);

struct OrbitElement {
  VahlenMatrix<Rational> matrix;
  double c_norm = 0.0;
  int word_length = 0;
};

// Distinct products of generators and their inverses of length <= max_length,
// deduplicated by exact entries, in breadth-first order.
std::vector<OrbitElement> word_orbit(const GroupDescriptor& desc, int max_length);
std::vector<OrbitElement> word_orbit(const std::vector<VahlenMatrix<Rational>>& generators,
                                     int entry_dim, int max_length);

}  // namespace hypsym
