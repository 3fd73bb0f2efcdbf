#pragma once

// Weyl sums and exhaustive equidistribution runs over the outcome spaces
// Omega_{Q,N} (rationals a/q) and T_Gamma(X) (double cosets).

#include "hypsym/characters.hpp"
#include "hypsym/groups.hpp"
#include "hypsym/modsym.hpp"
#include "hypsym/statistics.hpp"

#include <complex>
#include <cstdint>
#include <string>
#include <vector>

namespace hypsym {

struct WeylQuery {
  std::vector<std::int64_t> l;   // one frequency per cocycle
  std::vector<std::int64_t> mu;  // dual-lattice coordinates
};

struct WeylRow {
  WeylQuery query;
  double x_max = 0.0;
  std::complex<double> value;
  std::uint64_t count = 0;
  double ratio = 0.0;  // |W| / #T
};

// sum over T_Gamma(X) of e(sum_i l_i omega_i(gamma) + <gamma inf, mu>)
std::complex<double> weyl_sum(const GroupDescriptor& desc, const std::vector<Cocycle>& cocycles,
                              const WeylQuery& query, double x_max, unsigned workers = 1);
// Many queries in one pass; cocycle values are computed once per representative.
std::vector<WeylRow> weyl_table(const GroupDescriptor& desc, const std::vector<Cocycle>& cocycles,
                                const std::vector<WeylQuery>& queries, double x_max, unsigned workers = 1);

struct StatisticsReport {
  std::vector<std::string> labels;
  std::vector<std::uint64_t> counts;
  std::vector<double> expected;
  std::uint64_t total = 0;
  double tv = 0.0;
  double chi2 = 0.0;
};

StatisticsReport make_report(std::vector<std::string> labels, std::vector<std::uint64_t> counts);

struct ModpForm {
  const ModularSymbolOracle* oracle = nullptr;
  PeriodLattice lattice;
};

// Histogram of (m+_{f_1}, m-_{f_1}, ..., m-_{f_d}) mod p over a/q in Omega_{Q,N} cap [lo, hi).
StatisticsReport run_modp_experiment(const std::vector<ModpForm>& forms, std::int64_t p, std::int64_t q_max,
                                     double lo = 0.0, double hi = 1.0, unsigned workers = 1);

struct CongruenceReport {
  std::int64_t m = 0;  // the solved multiplier
  std::uint64_t checked = 0;
  std::uint64_t violations = 0;
  std::vector<Fraction> first_violations;
};

// m+(a/q) = m chi(a) mod p over Omega_{Q,N}, with m solved from the first a/q with chi(a) != 0.
CongruenceReport check_character_congruence(const ModpForm& form, const DirichletCharacter& chi, std::int64_t q_max,
                                            unsigned workers = 1);

struct Mod1Report {
  StatisticsReport grid;  // bins^3 boxes on (Re mod 1, Im mod 1, a/q)
  double discrepancy_re = 0.0;
  double discrepancy_im = 0.0;
  double discrepancy_rational = 0.0;
  double lower_half_fraction = 0.0;  // share of a/q in [0, 1/2)
};

Mod1Report run_mod1_experiment(const ModularSymbolOracle& oracle, std::int64_t q_max, int bins = 4,
                               unsigned workers = 1);

struct CuspReport {
  StatisticsReport boxes;  // bins^n half-open boxes in lattice coordinates
  // Z[i] only: counts of the four quadrant cells under the rotation-equivariant
  // assignment, and the number of points whose orbit under z -> i z has size < 4.
  bool has_quadrants = false;
  std::vector<std::uint64_t> quadrants;
  std::uint64_t fixed_points = 0;
};

CuspReport run_cusp_experiment(const GroupDescriptor& desc, double x_max, int bins = 2, unsigned workers = 1);

// Quadrant cell (0..3) of a cusp point of Z[i], or -1 when its rotation orbit has size < 4.
int gaussian_quadrant(const CuspPoint& p);

}  // namespace hypsym
