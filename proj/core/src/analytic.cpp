#include "hypsym/analytic.hpp"

#include "hypsym/parallel.hpp"
#include "hypsym/special.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace hypsym {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;
constexpr std::size_t kBlockSize = 32;  // lower-left entries per work block

std::complex<double> e_of(double t) { return std::polar(1.0, kTwoPi * t); }

void check_mu_rank(const GroupDescriptor& desc, std::span<const std::int64_t> mu) {
  if (static_cast<int>(mu.size()) != desc.boundary_dim())
    throw DimensionMismatch("dual-lattice coordinates must have rank n");
}

std::complex<double> chi_bar(const Cocycle& chi, const GroupDescriptor& desc, const DoubleCosetRep& rep) {
  if (chi.kind() == CocycleKind::Trivial) return 1.0;
  return e_of(-chi.evaluate(desc, rep).value);
}

bool is_zero_vector(std::span<const std::int64_t> mu) {
  return std::all_of(mu.begin(), mu.end(), [](std::int64_t v) { return v == 0; });
}

// Integer coordinate vectors k with 0 < |sum k_i basis_i| <= radius (or = 0 when include_zero).
std::vector<std::vector<std::int64_t>> lattice_ball(const std::vector<std::vector<double>>& basis,
                                                    const std::vector<std::vector<double>>& dual, double radius,
                                                    bool include_zero) {
  const std::size_t n = basis.size();
  std::vector<std::int64_t> bound(n);
  for (std::size_t i = 0; i < n; ++i) {
    double len = 0.0;
    for (double v : dual[i]) len += v * v;
    bound[i] = static_cast<std::int64_t>(std::ceil(radius * std::sqrt(len))) + 1;
  }
  std::vector<std::vector<std::int64_t>> out;
  std::vector<std::int64_t> k(n);
  for (std::size_t i = 0; i < n; ++i) k[i] = -bound[i];
  for (;;) {
    std::vector<double> v(basis.empty() ? 0 : basis[0].size(), 0.0);
    bool zero = true;
    for (std::size_t i = 0; i < n; ++i) {
      if (k[i] != 0) zero = false;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] += static_cast<double>(k[i]) * basis[i][j];
    }
    double len2 = 0.0;
    for (double x : v) len2 += x * x;
    if ((zero && include_zero) || (!zero && len2 <= radius * radius * (1.0 + 1e-12))) out.push_back(k);
    std::size_t i = 0;
    while (i < n && ++k[i] > bound[i]) {
      k[i] = -bound[i];
      ++i;
    }
    if (i == n) break;
  }
  return out;
}

std::vector<double> quotient_vector(const GroupDescriptor& desc, QuadInt num, QuadInt c) {
  const auto& R = desc.ring();
  if (R.is_integers()) return {static_cast<double>(num.x) / static_cast<double>(c.x)};
  const double nc = static_cast<double>(R.norm(c));
  const QuadInt z = R.mul(num, R.conj(c));
  const auto v = R.to_real_vector(z);
  return {v[0] / nc, v[1] / nc};
}

double sphere_factor(const GroupDescriptor& desc) {
  // Surface measure of the unit sphere in R^n restricted to the listed signs.
  if (desc.boundary_dim() == 1) return desc.sign_convention() == SignConvention::BothSigns ? 2.0 : 1.0;
  const double n = desc.boundary_dim();
  return 2.0 * std::pow(std::numbers::pi, n / 2.0) / std::tgamma(n / 2.0);
}

double c_lattice_covolume(const GroupDescriptor& desc) {
  const auto& R = desc.ring();
  if (R.is_integers()) return static_cast<double>(desc.level());
  return R.omega().imag() * static_cast<double>(desc.level());
}

}  // namespace

double quotient_phase(const GroupDescriptor& desc, QuadInt num, QuadInt c, std::span<const std::int64_t> mu) {
  const auto& R = desc.ring();
  if (R.is_integers()) {
    // Lambda = L0 Z, dual basis 1/L0.
    const auto l0 = static_cast<std::int64_t>(std::llround(desc.lattice_basis()[0][0]));
    const std::int64_t den = std::abs(c.x) * l0;
    const std::int64_t n = (c.x < 0 ? -num.x : num.x) * mu[0];
    return static_cast<double>(pos_mod(n, den)) / static_cast<double>(den);
  }
  // num/c = (u + v omega)/N(c); <b_i, mu> = mu_i for the basis {1, omega}.
  const std::int64_t nc = R.norm(c);
  const QuadInt z = R.mul(num, R.conj(c));
  const std::int64_t n = pos_mod(z.x, nc) * pos_mod(mu[0], nc) % nc + pos_mod(z.y, nc) * pos_mod(mu[1], nc) % nc;
  return static_cast<double>(pos_mod(n, nc)) / static_cast<double>(nc);
}

std::vector<double> dual_vector(const GroupDescriptor& desc, std::span<const std::int64_t> coords) {
  check_mu_rank(desc, coords);
  return dual_lattice(desc.lattice_basis()).vector(coords);
}

double pairing_with_quotient(const GroupDescriptor& desc, QuadInt num, QuadInt c, const std::vector<double>& v) {
  const auto q = quotient_vector(desc, num, c);
  if (q.size() != v.size()) throw DimensionMismatch("pairing operands differ in dimension");
  double acc = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) acc += q[i] * v[i];
  return acc;
}

std::complex<double> kloosterman_sum(const GroupDescriptor& desc, QuadInt c, std::span<const std::int64_t> mu,
                                     std::span<const std::int64_t> nu, const Cocycle& chi) {
  check_mu_rank(desc, mu);
  check_mu_rank(desc, nu);
  std::complex<double> sum = 0.0;
  for (const auto& rep : reps_for_c(desc, c)) {
    const double phase = quotient_phase(desc, rep.a, c, mu) + quotient_phase(desc, rep.d, c, nu);
    sum += chi_bar(chi, desc, rep) * e_of(phase);
  }
  return sum;
}

double lseries_tail(const GroupDescriptor& desc, double sigma, double x_max, double density_constant) {
  const double n = desc.boundary_dim();
  if (sigma <= n) throw ConvergenceRegion("tail estimate needs Re s > n");
  return density_constant * sphere_factor(desc) / c_lattice_covolume(desc) * std::pow(x_max, 2.0 * n - 2.0 * sigma) /
         (2.0 * sigma - 2.0 * n);
}

double rep_density_constant(const GroupDescriptor& desc, double x_max) {
  double best = 0.0;
  const double n = desc.boundary_dim();
  for (const QuadInt c : lower_left_entries(desc, x_max)) {
    const double abs_c = std::sqrt(static_cast<double>(desc.ring().norm(c)));
    best = std::max(best, static_cast<double>(reps_for_c(desc, c).size()) / std::pow(abs_c, n));
  }
  return 2.0 * best;
}

namespace {

struct BlockSum {
  std::complex<double> value = 0.0;
  std::size_t terms = 0;
  double density = 0.0;
};

SeriesPartial lseries_impl(const GroupDescriptor& desc, std::complex<double> s, std::span<const std::int64_t> mu,
                           const Cocycle& chi, double x_max, unsigned workers) {
  check_mu_rank(desc, mu);
  const double n = desc.boundary_dim();
  if (s.real() <= n) throw ConvergenceRegion("Dirichlet series evaluated only for Re s > n");
  const auto cs = lower_left_entries(desc, x_max);
  const auto blocks = split_range(cs.size(), kBlockSize);
  const bool trivial_phase = is_zero_vector(mu) && chi.kind() == CocycleKind::Trivial;
  auto partials = run_blocks<BlockSum>(blocks.size(), workers, [&](std::size_t b) {
    BlockSum out;
    for (std::size_t i = blocks[b].begin; i < blocks[b].end; ++i) {
      const QuadInt c = cs[i];
      const double norm_c = static_cast<double>(desc.ring().norm(c));
      const std::complex<double> weight = std::exp(-s * std::log(norm_c));
      std::complex<double> inner = 0.0;
      std::size_t count = 0;
      if (trivial_phase) {
        count = count_reps_for_c(desc, c);
        inner = static_cast<double>(count);
      } else {
        const auto reps = reps_for_c(desc, c);
        count = reps.size();
        for (const auto& rep : reps)
          inner += chi_bar(chi, desc, rep) * e_of(quotient_phase(desc, rep.a, c, mu));
      }
      out.value += weight * inner;
      out.terms += count;
      out.density = std::max(out.density, static_cast<double>(count) / std::pow(norm_c, n / 2.0));
    }
    return out;
  });
  SeriesPartial result;
  result.s = s;
  result.mu.assign(mu.begin(), mu.end());
  result.x_max = x_max;
  result.value = 0.0;
  double density = 0.0;
  for (const auto& p : partials) {
    result.value += p.value;
    result.terms += p.terms;
    density = std::max(density, p.density);
  }
  result.tail = lseries_tail(desc, s.real(), x_max, 2.0 * density);
  return result;
}

}  // namespace

SeriesPartial lseries_partial(const GroupDescriptor& desc, std::complex<double> s, std::span<const std::int64_t> mu,
                              const Cocycle& chi, double x_max, unsigned workers) {
  return lseries_impl(desc, s, mu, chi, x_max, workers);
}

SeriesPartial lseries_kloosterman_route(const GroupDescriptor& desc, std::complex<double> s,
                                        std::span<const std::int64_t> mu, const Cocycle& chi, double x_max) {
  check_mu_rank(desc, mu);
  const double n = desc.boundary_dim();
  if (s.real() <= n) throw ConvergenceRegion("Dirichlet series evaluated only for Re s > n");
  const std::vector<std::int64_t> zero(mu.size(), 0);
  SeriesPartial result;
  result.s = s;
  result.mu.assign(mu.begin(), mu.end());
  result.x_max = x_max;
  result.value = 0.0;
  double density = 0.0;
  for (const QuadInt c : lower_left_entries(desc, x_max)) {
    const double norm_c = static_cast<double>(desc.ring().norm(c));
    const auto k = kloosterman_sum(desc, c, mu, zero, chi);
    result.value += k * std::exp(-s * std::log(norm_c));
    const auto count = reps_for_c(desc, c).size();
    result.terms += count;
    density = std::max(density, static_cast<double>(count) / std::pow(norm_c, n / 2.0));
  }
  result.tail = lseries_tail(desc, s.real(), x_max, 2.0 * density);
  return result;
}

std::complex<double> eisenstein_direct(const GroupDescriptor& desc, const Cocycle& chi, const EisensteinInput& in) {
  const int n = desc.boundary_dim();
  if (static_cast<int>(in.x.size()) != n) throw DimensionMismatch("point has the wrong boundary dimension");
  if (!(in.y > 0.0)) throw DomainError("height must be positive");
  if (in.s.real() <= n) throw ConvergenceRegion("Eisenstein series evaluated only for Re s > n");
  const auto& basis = desc.lattice_basis();
  const auto dual = dual_lattice(basis);
  std::vector<std::vector<double>> lambdas;
  for (const auto& k : lattice_ball(basis, dual.basis, in.lattice_cut, true)) {
    std::vector<double> v(n, 0.0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) v[j] += static_cast<double>(k[i]) * basis[i][j];
    lambdas.push_back(std::move(v));
  }
  const auto cs = lower_left_entries(desc, in.x_max);
  const auto blocks = split_range(cs.size(), kBlockSize);
  const double y2 = in.y * in.y;
  auto partials = run_blocks<std::complex<double>>(blocks.size(), in.workers, [&](std::size_t b) {
    std::complex<double> acc = 0.0;
    std::vector<double> u(n);
    for (std::size_t i = blocks[b].begin; i < blocks[b].end; ++i) {
      const QuadInt c = cs[i];
      const double norm_c = static_cast<double>(desc.ring().norm(c));
      for (const auto& rep : reps_for_c(desc, c)) {
        const auto q = quotient_vector(desc, rep.d, c);
        for (int j = 0; j < n; ++j) u[j] = in.x[j] + q[j];
        // canonical residues d can put x + d/c far from the origin; shift by the
        // nearest lattice vector so the |lambda| ball is centred on the peak
        for (int i = 0; i < n; ++i) {
          double k = 0.0;
          for (int j = 0; j < n; ++j) k += u[j] * dual.basis[i][j];
          k = std::round(k);
          if (k != 0.0)
            for (int j = 0; j < n; ++j) u[j] -= k * basis[i][j];
        }
        std::complex<double> inner = 0.0;
        for (const auto& lam : lambdas) {
          double t2 = 0.0;
          for (int j = 0; j < n; ++j) {
            const double t = u[j] + lam[j];
            t2 += t * t;
          }
          // y(gamma P) = y / (|c|^2 (|x + d/c|^2 + y^2))
          const double h = in.y / (norm_c * (t2 + y2));
          inner += std::exp(in.s * std::log(h));
        }
        acc += chi_bar(chi, desc, rep) * inner;
      }
    }
    return acc;
  });
  std::complex<double> total = static_cast<double>(desc.index_inf()) * std::exp(in.s * std::log(in.y));
  for (const auto& p : partials) total += p;
  return total;
}

std::complex<double> eisenstein_fourier(const GroupDescriptor& desc, const Cocycle& chi, const EisensteinInput& in) {
  const int n = desc.boundary_dim();
  if (static_cast<int>(in.x.size()) != n) throw DimensionMismatch("point has the wrong boundary dimension");
  if (!(in.y > 0.0)) throw DomainError("height must be positive");
  const std::complex<double> s = in.s;
  if (s.real() <= n) throw ConvergenceRegion("Eisenstein series evaluated only for Re s > n");
  const auto& basis = desc.lattice_basis();
  const auto dual = dual_lattice(basis);
  const double vol = desc.lattice_covolume();
  const double nh = n / 2.0;
  const double pi = std::numbers::pi;

  const auto mus = lattice_ball(dual.basis, basis, in.mu_cut, true);  // mus[0..] includes 0
  const auto cs = lower_left_entries(desc, in.x_max);
  const auto blocks = split_range(cs.size(), kBlockSize);
  // L(s, chi, mu) for every mu at once: sum conj(chi) e(<d/c, mu>) / |c|^{2s}.
  auto partials = run_blocks<std::vector<std::complex<double>>>(blocks.size(), in.workers, [&](std::size_t b) {
    std::vector<std::complex<double>> acc(mus.size(), 0.0);
    for (std::size_t i = blocks[b].begin; i < blocks[b].end; ++i) {
      const QuadInt c = cs[i];
      const std::complex<double> weight = std::exp(-s * std::log(static_cast<double>(desc.ring().norm(c))));
      for (const auto& rep : reps_for_c(desc, c)) {
        const std::complex<double> w = weight * chi_bar(chi, desc, rep);
        for (std::size_t m = 0; m < mus.size(); ++m) acc[m] += w * e_of(quotient_phase(desc, rep.d, c, mus[m]));
      }
    }
    return acc;
  });
  std::vector<std::complex<double>> lvals(mus.size(), 0.0);
  for (const auto& p : partials)
    for (std::size_t m = 0; m < mus.size(); ++m) lvals[m] += p[m];

  const std::complex<double> gamma_s = complex_gamma(s);
  std::complex<double> total = static_cast<double>(desc.index_inf()) * std::exp(s * std::log(in.y));
  const std::complex<double> front = 2.0 * std::exp(s * std::log(pi)) * std::pow(in.y, nh) / (vol * gamma_s);
  for (std::size_t m = 0; m < mus.size(); ++m) {
    if (is_zero_vector(mus[m])) {
      total += std::pow(pi, nh) * complex_gamma(s - nh) / (vol * gamma_s) * lvals[m] *
               std::exp((static_cast<double>(n) - s) * std::log(in.y));
      continue;
    }
    const auto mv = dual.vector(mus[m]);
    double len2 = 0.0, xm = 0.0;
    for (int j = 0; j < n; ++j) {
      len2 += mv[j] * mv[j];
      xm += in.x[j] * mv[j];
    }
    const double len = std::sqrt(len2);
    total += front * lvals[m] * std::exp((s - nh) * std::log(len)) * bessel_K(s - nh, kTwoPi * len * in.y) *
             e_of(xm);
  }
  return total;
}

double counting_constant(const GroupDescriptor& desc, double volume) {
  if (!(volume > 0.0)) throw DomainError("volume must be positive");
  const double n = desc.boundary_dim();
  const double vol_lambda = desc.lattice_covolume();
  return desc.counting_multiplicity() * vol_lambda * vol_lambda * std::tgamma(n) /
         (std::pow(std::numbers::pi, n / 2.0) * volume * std::tgamma(n / 2.0));
}

double predicted_count(const GroupDescriptor& desc, double volume, double x_max) {
  const double n = desc.boundary_dim();
  return counting_constant(desc, volume) * std::pow(x_max, 2.0 * n) / n;
}

}  // namespace hypsym
