#include "hypsym/equidist.hpp"

#include "hypsym/analytic.hpp"
#include "hypsym/parallel.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <numeric>

namespace hypsym {

namespace {

constexpr std::size_t kCBlock = 32;
constexpr std::size_t kQBlock = 8;

std::complex<double> e_of(double t) { return std::polar(1.0, 2.0 * std::numbers::pi * t); }

std::vector<std::int64_t> multiples(std::int64_t level, std::int64_t q_max) {
  std::vector<std::int64_t> qs;
  for (std::int64_t q = level; q <= q_max; q += level) qs.push_back(q);
  return qs;
}

double frac(double x) {
  double f = x - std::floor(x);
  return f >= 1.0 ? 0.0 : f;
}

std::int64_t modp_value(const ModpForm& form, const SymmetrizedSymbol& s, SymbolSign sign) {
  return reduce_mod_p(normalized_rational(s, form.lattice, sign), form.lattice.valuation(sign), form.lattice.p);
}

}  // namespace

std::vector<WeylRow> weyl_table(const GroupDescriptor& desc, const std::vector<Cocycle>& cocycles,
                                const std::vector<WeylQuery>& queries, double x_max, unsigned workers) {
  for (const auto& q : queries) {
    if (q.l.size() != cocycles.size()) throw DimensionMismatch("one frequency per cocycle is required");
    if (static_cast<int>(q.mu.size()) != desc.boundary_dim()) throw DimensionMismatch("mu has the wrong rank");
  }
  const auto cs = lower_left_entries(desc, x_max);
  const auto blocks = split_range(cs.size(), kCBlock);
  struct Partial {
    std::vector<std::complex<double>> sums;
    std::uint64_t count = 0;
  };
  auto partials = run_blocks<Partial>(blocks.size(), workers, [&](std::size_t b) {
    Partial out;
    out.sums.assign(queries.size(), 0.0);
    std::vector<CocycleValue> vals(cocycles.size());
    for (std::size_t i = blocks[b].begin; i < blocks[b].end; ++i) {
      const QuadInt c = cs[i];
      for (const auto& rep : reps_for_c(desc, c)) {
        ++out.count;
        for (std::size_t k = 0; k < cocycles.size(); ++k) vals[k] = cocycles[k].evaluate(desc, rep);
        for (std::size_t qi = 0; qi < queries.size(); ++qi) {
          const auto& q = queries[qi];
          CocycleValue combo{0.0, 0, 1};
          for (std::size_t k = 0; k < cocycles.size(); ++k)
            if (q.l[k] != 0) combo = add(combo, scale(vals[k], q.l[k]));
          out.sums[qi] += e_of(combo.value + quotient_phase(desc, rep.a, c, q.mu));
        }
      }
    }
    return out;
  });
  std::vector<WeylRow> rows(queries.size());
  std::uint64_t count = 0;
  for (const auto& p : partials) count += p.count;
  for (std::size_t qi = 0; qi < queries.size(); ++qi) {
    rows[qi].query = queries[qi];
    rows[qi].x_max = x_max;
    rows[qi].value = 0.0;
    for (const auto& p : partials) rows[qi].value += p.sums[qi];
    rows[qi].count = count;
    rows[qi].ratio = count == 0 ? 0.0 : std::abs(rows[qi].value) / static_cast<double>(count);
  }
  return rows;
}

std::complex<double> weyl_sum(const GroupDescriptor& desc, const std::vector<Cocycle>& cocycles,
                              const WeylQuery& query, double x_max, unsigned workers) {
  return weyl_table(desc, cocycles, {query}, x_max, workers).front().value;
}

StatisticsReport make_report(std::vector<std::string> labels, std::vector<std::uint64_t> counts) {
  StatisticsReport r;
  r.labels = std::move(labels);
  r.counts = std::move(counts);
  const auto stats = uniformity(r.counts);
  r.total = stats.total;
  r.tv = stats.tv;
  r.chi2 = stats.chi2;
  r.expected.assign(r.counts.size(), static_cast<double>(r.total) / static_cast<double>(r.counts.size()));
  return r;
}

StatisticsReport run_modp_experiment(const std::vector<ModpForm>& forms, std::int64_t p, std::int64_t q_max,
                                     double lo, double hi, unsigned workers) {
  if (forms.empty()) throw DomainError("at least one form is required");
  if (forms.size() > 3) throw DomainError("at most three forms per run");
  if (!is_prime(p)) throw DomainError("p must be prime");
  const std::int64_t level = forms.front().oracle->level();
  for (const auto& f : forms) {
    if (f.lattice.p != p) throw DomainError("period lattice was normalized for a different prime");
    if (f.oracle->level() != level) throw LevelMismatch("all forms must share the level");
  }
  std::size_t n_cells = 1;
  for (std::size_t k = 0; k < 2 * forms.size(); ++k) n_cells *= static_cast<std::size_t>(p);
  const auto qs = multiples(level, q_max);
  const auto blocks = split_range(qs.size(), kQBlock);
  auto partials = run_blocks<std::vector<std::uint64_t>>(blocks.size(), workers, [&](std::size_t b) {
    std::vector<std::uint64_t> counts(n_cells, 0);
    for (std::size_t i = blocks[b].begin; i < blocks[b].end; ++i) {
      const std::int64_t q = qs[i];
      for (std::int64_t a = 1; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        const double x = static_cast<double>(a) / static_cast<double>(q);
        if (x < lo || x >= hi) continue;
        std::size_t cell = 0;
        for (const auto& f : forms) {
          const auto s = f.oracle->symmetrized(a, q);
          cell = cell * static_cast<std::size_t>(p) + static_cast<std::size_t>(modp_value(f, s, SymbolSign::Plus));
          cell = cell * static_cast<std::size_t>(p) + static_cast<std::size_t>(modp_value(f, s, SymbolSign::Minus));
        }
        ++counts[cell];
      }
    }
    return counts;
  });
  std::vector<std::uint64_t> counts(n_cells, 0);
  for (const auto& part : partials)
    for (std::size_t c = 0; c < n_cells; ++c) counts[c] += part[c];
  std::vector<std::string> labels(n_cells);
  for (std::size_t c = 0; c < n_cells; ++c) {
    std::string label;
    std::size_t rest = c;
    std::vector<std::size_t> digits(2 * forms.size());
    for (std::size_t k = digits.size(); k-- > 0;) {
      digits[k] = rest % static_cast<std::size_t>(p);
      rest /= static_cast<std::size_t>(p);
    }
    for (std::size_t k = 0; k < digits.size(); ++k) label += (k ? "," : "") + std::to_string(digits[k]);
    labels[c] = "(" + label + ")";
  }
  return make_report(std::move(labels), std::move(counts));
}

CongruenceReport check_character_congruence(const ModpForm& form, const DirichletCharacter& chi, std::int64_t q_max,
                                            unsigned workers) {
  const std::int64_t p = form.lattice.p;
  if (chi.order() != p) throw DomainError("character order must equal p");
  const std::int64_t level = form.oracle->level();
  if (chi.modulus() != level) throw LevelMismatch("character modulus must equal the level");
  const auto qs = multiples(level, q_max);
  CongruenceReport report;
  // Solve m from the first a/q (in (q, a) order) with chi(a) != 0.
  bool solved = false;
  for (std::int64_t q : qs) {
    for (std::int64_t a = 1; a < q && !solved; ++a) {
      if (std::gcd(a, q) != 1 || chi.value_exact(a) == 0) continue;
      const std::int64_t value = modp_value(form, form.oracle->symmetrized(a, q), SymbolSign::Plus);
      report.m = pos_mod(value * inverse_mod(chi.value_exact(a), p), p);
      solved = true;
    }
    if (solved) break;
  }
  if (!solved) throw DomainError("no sample with chi(a) != 0");
  struct Partial {
    std::uint64_t checked = 0, violations = 0;
    std::vector<Fraction> first;
  };
  const auto blocks = split_range(qs.size(), kQBlock);
  auto partials = run_blocks<Partial>(blocks.size(), workers, [&](std::size_t b) {
    Partial out;
    for (std::size_t i = blocks[b].begin; i < blocks[b].end; ++i) {
      const std::int64_t q = qs[i];
      for (std::int64_t a = 1; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        ++out.checked;
        const std::int64_t value = modp_value(form, form.oracle->symmetrized(a, q), SymbolSign::Plus);
        if (value != pos_mod(report.m * chi.value_exact(a), p)) {
          ++out.violations;
          if (out.first.size() < 10) out.first.push_back({a, q});
        }
      }
    }
    return out;
  });
  for (const auto& part : partials) {
    report.checked += part.checked;
    report.violations += part.violations;
    for (const auto& f : part.first)
      if (report.first_violations.size() < 10) report.first_violations.push_back(f);
  }
  return report;
}

Mod1Report run_mod1_experiment(const ModularSymbolOracle& oracle, std::int64_t q_max, int bins, unsigned workers) {
  if (bins < 1) throw DomainError("bins must be positive");
  const auto qs = multiples(oracle.level(), q_max);
  const auto blocks = split_range(qs.size(), kQBlock);
  struct Sample {
    double re, im, r;
  };
  auto partials = run_blocks<std::vector<Sample>>(blocks.size(), workers, [&](std::size_t b) {
    std::vector<Sample> out;
    for (std::size_t i = blocks[b].begin; i < blocks[b].end; ++i) {
      const std::int64_t q = qs[i];
      for (std::int64_t a = 1; a < q; ++a) {
        if (std::gcd(a, q) != 1) continue;
        const auto z = oracle.symbol(a, q);
        out.push_back({frac(z.real()), frac(z.imag()), static_cast<double>(a) / static_cast<double>(q)});
      }
    }
    return out;
  });
  std::vector<double> re, im, rat;
  const auto ub = static_cast<std::size_t>(bins);
  std::vector<std::uint64_t> counts(ub * ub * ub, 0);
  std::uint64_t lower_half = 0;
  auto bin_of = [&](double x) { return std::min(ub - 1, static_cast<std::size_t>(x * static_cast<double>(bins))); };
  for (const auto& part : partials)
    for (const auto& s : part) {
      re.push_back(s.re);
      im.push_back(s.im);
      rat.push_back(s.r);
      ++counts[(bin_of(s.re) * ub + bin_of(s.im)) * ub + bin_of(s.r)];
      if (2.0 * s.r < 1.0) ++lower_half;
    }
  if (rat.empty()) throw EmptySample("outcome space is empty");
  Mod1Report report;
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < ub; ++i)
    for (std::size_t j = 0; j < ub; ++j)
      for (std::size_t k = 0; k < ub; ++k)
        labels.push_back("(" + std::to_string(i) + "," + std::to_string(j) + "," + std::to_string(k) + ")");
  report.grid = make_report(std::move(labels), std::move(counts));
  report.lower_half_fraction = static_cast<double>(lower_half) / static_cast<double>(rat.size());
  report.discrepancy_re = star_discrepancy(std::move(re));
  report.discrepancy_im = star_discrepancy(std::move(im));
  report.discrepancy_rational = star_discrepancy(std::move(rat));
  return report;
}

int gaussian_quadrant(const CuspPoint& p) {
  if (p.num.size() != 2) throw DimensionMismatch("quadrants are defined on R^2 / Z[i]");
  const std::int64_t n = p.den;
  using Pt = std::pair<std::int64_t, std::int64_t>;
  std::array<Pt, 4> orbit;
  orbit[0] = {p.num[0], p.num[1]};
  for (int k = 1; k < 4; ++k) orbit[k] = {pos_mod(-orbit[k - 1].second, n), orbit[k - 1].first};
  for (int k = 1; k < 4; ++k)
    if (orbit[k] == orbit[0]) return -1;
  auto in_q0 = [&](const Pt& x) { return 2 * x.first < n && 2 * x.second < n; };
  int canon = -1;
  for (int k = 0; k < 4; ++k)
    if (in_q0(orbit[k]) && (canon < 0 || orbit[k] < orbit[canon])) canon = k;
  if (canon < 0) canon = static_cast<int>(std::min_element(orbit.begin(), orbit.end()) - orbit.begin());
  // p = rot^{4 - canon}(orbit[canon])
  return (4 - canon) % 4;
}

CuspReport run_cusp_experiment(const GroupDescriptor& desc, double x_max, int bins, unsigned workers) {
  if (bins < 1) throw DomainError("bins must be positive");
  const int n = desc.boundary_dim();
  std::size_t n_cells = 1;
  for (int i = 0; i < n; ++i) n_cells *= static_cast<std::size_t>(bins);
  const bool quadrants = !desc.ring().is_integers() && desc.ring().discriminant() == -4;
  const auto cs = lower_left_entries(desc, x_max);
  const auto blocks = split_range(cs.size(), kCBlock);
  struct Partial {
    std::vector<std::uint64_t> boxes;
    std::array<std::uint64_t, 4> quad{};
    std::uint64_t fixed = 0;
  };
  auto partials = run_blocks<Partial>(blocks.size(), workers, [&](std::size_t b) {
    Partial out;
    out.boxes.assign(n_cells, 0);
    for (std::size_t i = blocks[b].begin; i < blocks[b].end; ++i) {
      for (const auto& rep : reps_for_c(desc, cs[i])) {
        const CuspPoint pt = cusp_point(desc, rep);
        std::size_t cell = 0;
        for (int k = n - 1; k >= 0; --k) {
          const std::int64_t idx = pt.num[static_cast<std::size_t>(k)] * bins / pt.den;
          cell = cell * static_cast<std::size_t>(bins) + static_cast<std::size_t>(idx);
        }
        ++out.boxes[cell];
        if (quadrants) {
          const int q = gaussian_quadrant(pt);
          if (q < 0) ++out.fixed;
          else ++out.quad[static_cast<std::size_t>(q)];
        }
      }
    }
    return out;
  });
  CuspReport report;
  std::vector<std::uint64_t> boxes(n_cells, 0);
  report.has_quadrants = quadrants;
  report.quadrants.assign(quadrants ? 4 : 0, 0);
  for (const auto& part : partials) {
    for (std::size_t c = 0; c < n_cells; ++c) boxes[c] += part.boxes[c];
    if (quadrants) {
      for (std::size_t k = 0; k < 4; ++k) report.quadrants[k] += part.quad[k];
      report.fixed_points += part.fixed;
    }
  }
  std::vector<std::string> labels(n_cells);
  for (std::size_t c = 0; c < n_cells; ++c) {
    std::string label;
    std::size_t rest = c;
    for (int k = 0; k < n; ++k) {
      label += (k ? "," : "") + std::to_string(rest % static_cast<std::size_t>(bins));
      rest /= static_cast<std::size_t>(bins);
    }
    labels[c] = "[" + label + "]";
  }
  report.boxes = make_report(std::move(labels), std::move(boxes));
  return report;
}

}  // namespace hypsym
