#pragma once

// Kloosterman sums, partial Dirichlet series L(s, chi, mu), and the two
// truncations of the twisted Eisenstein series (direct sum over
// Gamma'_inf \ Gamma and its Fourier expansion at infinity).

#include "hypsym/characters.hpp"
#include "hypsym/groups.hpp"

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace hypsym {

// Elements of the dual lattice are passed as integer coordinates in the
// dual basis of desc.lattice_basis().
std::vector<double> dual_vector(const GroupDescriptor& desc, std::span<const std::int64_t> coords);

// <a c^{-1}, v> for a representative, with a c^{-1} as a vector of R^n.
double pairing_with_quotient(const GroupDescriptor& desc, QuadInt num, QuadInt c, const std::vector<double>& v);

// Exact phase <num c^{-1}, mu> mod 1 in [0, 1).
double quotient_phase(const GroupDescriptor& desc, QuadInt num, QuadInt c, std::span<const std::int64_t> mu);

// S(mu, nu, c, chi) = sum over reps with lower-left c of conj(chi(gamma)) e(<a/c, mu> + <d/c, nu>).
std::complex<double> kloosterman_sum(const GroupDescriptor& desc, QuadInt c, std::span<const std::int64_t> mu,
                                     std::span<const std::int64_t> nu, const Cocycle& chi);

struct SeriesPartial {
  std::complex<double> s;
  std::vector<std::int64_t> mu;
  double x_max = 0.0;
  std::complex<double> value;
  double tail = 0.0;
  std::size_t terms = 0;
};

// Sum of conj(chi(gamma)) e(<gamma inf, mu>) / |c|^{2s} over reps with |c| <= X.
// Throws ConvergenceRegion for Re s <= n.
SeriesPartial lseries_partial(const GroupDescriptor& desc, std::complex<double> s, std::span<const std::int64_t> mu,
                              const Cocycle& chi, double x_max, unsigned workers = 1);

// Same truncation summed per c through kloosterman_sum(0, mu, c): the Fourier
// coefficient at infinity, with e(<d/c, mu>).
SeriesPartial lseries_kloosterman_route(const GroupDescriptor& desc, std::complex<double> s,
                                        std::span<const std::int64_t> mu, const Cocycle& chi, double x_max);

// C with #reps(c) <= C |c|^n on |c| <= X, times the safety factor 2.
double rep_density_constant(const GroupDescriptor& desc, double x_max);
// Estimate of sum_{|c| > X} #reps(c) / |c|^{2 sigma}.
double lseries_tail(const GroupDescriptor& desc, double sigma, double x_max, double density_constant);

struct EisensteinInput {
  std::vector<double> x;  // boundary coordinate in R^n
  double y = 1.0;
  std::complex<double> s = 2.0;
  double x_max = 0.0;      // |c| cutoff
  double lattice_cut = 0;  // |lambda| cutoff (direct sum)
  double mu_cut = 0;       // |mu| cutoff (Fourier sum)
  unsigned workers = 1;
};

// index_inf y^s + sum_{reps, |c| <= X} sum_{|lambda| <= Lcut} conj(chi) y(gamma (x + lambda, y))^s
std::complex<double> eisenstein_direct(const GroupDescriptor& desc, const Cocycle& chi, const EisensteinInput& in);
// Constant term plus K-Bessel terms for 0 < |mu| <= M, with L partials at the same |c| cutoff.
std::complex<double> eisenstein_fourier(const GroupDescriptor& desc, const Cocycle& chi, const EisensteinInput& in);

// Leading constant of #T(X) ~ constant X^{2n} / n given vol(Gamma \ H^{n+1}).
double counting_constant(const GroupDescriptor& desc, double volume);
double predicted_count(const GroupDescriptor& desc, double volume, double x_max);

}  // namespace hypsym
