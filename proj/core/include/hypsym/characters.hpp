#pragma once

// Additive characters Gamma -> R/Z that are trivial on the parabolic
// translations, the Dirichlet-entry cocycles sigma_chi, and the Hecke and
// Atkin-Lehner operators on cocycles of Gamma0(N).

#include "hypsym/groups.hpp"
#include "hypsym/modsym.hpp"

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace hypsym {

// Integer 2x2 matrix, the common currency for Gamma0(N) over Z.
struct IntMatrix {
  std::int64_t a = 1, b = 0, c = 0, d = 1;

  std::int64_t det() const { return a * d - b * c; }
  friend IntMatrix operator*(const IntMatrix& x, const IntMatrix& y) {
    return {x.a * y.a + x.b * y.c, x.a * y.b + x.b * y.d, x.c * y.a + x.d * y.c, x.c * y.b + x.d * y.d};
  }
  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;
};

IntMatrix to_int_matrix(const DoubleCosetRep& rep);
bool in_gamma0(const IntMatrix& m, std::int64_t level);

// Deterministic pseudo-random elements of Gamma0(N): lower-left N k with
// |N k| <= c_bound (k = 0 allowed), a coprime to it, then a random right translation.
std::vector<IntMatrix> sample_gamma0(std::int64_t level, std::size_t count, std::uint64_t seed,
                                     std::int64_t c_bound = 200);

// chi(g^k) = k/m in R/Z for the generator g of (Z/N)^*.
class DirichletCharacter {
 public:
  // N prime, order m | N - 1; generator 0 selects the smallest primitive root.
  DirichletCharacter(std::int64_t modulus, std::int64_t order, std::int64_t generator = 0);

  std::int64_t modulus() const { return modulus_; }
  std::int64_t order() const { return order_; }
  std::int64_t generator() const { return generator_; }
  // Discrete log base g, for a coprime to N.
  std::int64_t dlog(std::int64_t a) const;
  // chi(a) as k in Z/m (value k/m).
  std::int64_t value_exact(std::int64_t a) const;
  double value(std::int64_t a) const;
  // chi^e (same generator).
  DirichletCharacter power(std::int64_t e) const;

 private:
  std::int64_t modulus_ = 2;
  std::int64_t order_ = 1;
  std::int64_t generator_ = 1;
  std::int64_t exponent_ = 1;  // chi(g) = exponent / order
  std::vector<std::int64_t> dlog_;
};

// A value in R/Z. Finite-order values also carry the exact residue
// (value = exact / order); order 0 marks an infinite-order cocycle.
struct CocycleValue {
  double value = 0.0;
  std::int64_t exact = 0;
  std::int64_t order = 1;

  bool is_exact() const { return order > 0; }
  bool is_zero(double tol = 1e-9) const;
};

CocycleValue add(const CocycleValue& x, const CocycleValue& y);
CocycleValue scale(const CocycleValue& x, std::int64_t n);
CocycleValue negate(const CocycleValue& x);
// Distance in R/Z.
double circle_distance(double x, double y);

enum class CocycleKind { Trivial, DirichletEntry, ModularSymbolModP, ModularSymbolMod1 };
enum class Mod1Component { Re, Im };

class Cocycle {
 public:
  static Cocycle trivial();
  static Cocycle dirichlet_entry(DirichletCharacter chi);
  static Cocycle modular_symbol_mod_p(std::shared_ptr<const ModularSymbolOracle> oracle, PeriodLattice lattice,
                                      SymbolSign sign);
  static Cocycle modular_symbol_mod1(std::shared_ptr<const ModularSymbolOracle> oracle, Mod1Component component);

  CocycleKind kind() const { return kind_; }
  // Order of the image (0 for R/Z-valued cocycles).
  std::int64_t order() const;
  // Level the cocycle lives on (1 for Trivial).
  std::int64_t level() const;
  std::string describe() const;

  // Value on gamma in Gamma0(level). Throws NotInGroup otherwise.
  CocycleValue evaluate(const IntMatrix& g) const;
  // Value on the double coset of rep (only the Trivial cocycle supports O_K).
  CocycleValue evaluate(const GroupDescriptor& desc, const DoubleCosetRep& rep) const;
  // Value on any gamma with top-left a and lower-left c (c != 0), or a unit a when c = 0.
  CocycleValue evaluate_cusp(std::int64_t a, std::int64_t c) const;

  const DirichletCharacter& character() const { return *chi_; }

 private:
  CocycleKind kind_ = CocycleKind::Trivial;
  std::shared_ptr<const DirichletCharacter> chi_;
  std::shared_ptr<const ModularSymbolOracle> oracle_;
  PeriodLattice lattice_;
  SymbolSign sign_ = SymbolSign::Plus;
  Mod1Component component_ = Mod1Component::Re;
};

struct HeckeTerm {
  IntMatrix gamma_r;  // alpha_r gamma alpha_s^{-1}
  int r = 0;
  int s = 0;  // sigma(r)
};

// alpha_r = (1 r; 0 l) for r < l and alpha_l = (l 0; 0 1).
IntMatrix hecke_alpha(std::int64_t r, std::int64_t l);

// Finds sigma(r) for r = 0..l by an integrality search. Throws DecompositionFailed.
std::vector<HeckeTerm> hecke_decompose(const IntMatrix& g, std::int64_t l, std::int64_t level);

// (T_l omega)(gamma) = sum_r omega(gamma_{r,l})
CocycleValue hecke_Tl_apply(const Cocycle& omega, std::int64_t l, const IntMatrix& g, std::int64_t level);

// W gamma W^{-1} with W = (0 1; N 0); throws ConjugateNotIntegral.
IntMatrix atkin_lehner_conjugate(const IntMatrix& g, std::int64_t level);
CocycleValue atkin_lehner_apply(const Cocycle& omega, const IntMatrix& g, std::int64_t level);

struct GeneralPositionReport {
  bool in_general_position = true;
  bool checked = true;  // false when an infinite-order cocycle was present
  std::vector<std::vector<std::int64_t>> violations;  // coefficient tuples (n_1, ..., n_d)
  std::string note;
};

// Exhaustive check of: sum n_i omega_i = 0 on the sample implies n_i omega_i = 0 on
// the sample for every i, over n_i in Z/m_i.
GeneralPositionReport check_general_position(const std::vector<Cocycle>& cocycles,
                                             const std::vector<IntMatrix>& sample);

}  // namespace hypsym
