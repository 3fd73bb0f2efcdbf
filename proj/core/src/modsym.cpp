#include "hypsym/modsym.hpp"

#include "hypsym/parallel.hpp"
#include "hypsym/quadratic.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <numeric>
#include <sstream>

namespace hypsym {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

// prod_{k>=1} (1 - q^{step k}) up to q^n_max via Euler's pentagonal series.
std::vector<std::pair<std::size_t, std::int64_t>> pentagonal_terms(std::size_t n_max, std::size_t step) {
  std::vector<std::pair<std::size_t, std::int64_t>> terms;
  terms.emplace_back(0, 1);
  for (std::int64_t k = 1;; ++k) {
    const auto e1 = static_cast<std::size_t>(k * (3 * k - 1) / 2) * step;
    const auto e2 = static_cast<std::size_t>(k * (3 * k + 1) / 2) * step;
    if (e1 > n_max) break;
    const std::int64_t sign = (k % 2 == 0) ? 1 : -1;
    terms.emplace_back(e1, sign);
    if (e2 <= n_max) terms.emplace_back(e2, sign);
  }
  return terms;
}

std::vector<std::int64_t> multiply_sparse(const std::vector<std::int64_t>& dense,
                                          const std::vector<std::pair<std::size_t, std::int64_t>>& sparse,
                                          std::size_t n_max) {
  std::vector<std::int64_t> out(n_max + 1, 0);
  for (std::size_t i = 0; i <= n_max; ++i) {
    if (dense[i] == 0) continue;
    for (const auto& [e, c] : sparse) {
      if (i + e > n_max) break;
      out[i + e] += dense[i] * c;
    }
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

Newform eta_product_coefficients(std::size_t n_max) {
  if (n_max < 1) throw DomainError("n_max must be >= 1");
  // Series in q of the product part, up to q^{n_max - 1}.
  const std::size_t m = n_max - 1;
  const auto p1 = pentagonal_terms(m, 1);
  const auto p11 = pentagonal_terms(m, 11);
  std::vector<std::int64_t> dense(m + 1, 0);
  for (const auto& [e, c] : p1) dense[e] += c;
  dense = multiply_sparse(dense, p1, m);
  dense = multiply_sparse(dense, p11, m);
  dense = multiply_sparse(dense, p11, m);
  Newform f;
  f.level = 11;
  f.label = "11a (eta product)";
  f.coeffs.resize(n_max);
  for (std::size_t n = 1; n <= n_max; ++n) f.coeffs[n - 1] = static_cast<double>(dense[n - 1]);
  return f;
}

std::int64_t divisor_count(std::int64_t n) {
  std::int64_t count = 1;
  for (std::int64_t p = 2; p * p <= n; ++p) {
    int e = 0;
    while (n % p == 0) {
      n /= p;
      ++e;
    }
    count *= e + 1;
  }
  if (n > 1) count *= 2;
  return count;
}

void validate_newform(const Newform& f) {
  if (f.coeffs.empty() || f.coeffs[0] != 1.0) throw ParseError("a_1 must be present and equal to 1");
  for (std::size_t n = 1; n <= f.coeffs.size(); ++n) {
    const double bound = static_cast<double>(divisor_count(static_cast<std::int64_t>(n))) *
                         std::sqrt(static_cast<double>(n));
    if (std::abs(f.coeffs[n - 1]) > bound + 1e-9)
      throw BoundViolation("|a_" + std::to_string(n) + "| = " + std::to_string(std::abs(f.coeffs[n - 1])) +
                           " exceeds d(n) sqrt(n) = " + std::to_string(bound));
  }
}

Newform parse_newform(std::istream& in, const std::string& source) {
  Newform f;
  bool have_level = false;
  std::string line;
  int line_no = 0;
  std::size_t expected = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto h = line.find('#'); h != std::string::npos) line.resize(h);
    line = trim(line);
    if (line.empty()) continue;
    const std::string where = source + ":" + std::to_string(line_no) + ": ";
    std::istringstream ls(line);
    if (!have_level) {
      std::string tag;
      std::int64_t level = 0;
      if (!(ls >> tag >> level) || tag != "N" || level < 1)
        throw ParseError(where + "expected header 'N <level>'");
      f.level = level;
      have_level = true;
      continue;
    }
    std::int64_t n = 0;
    double an = 0.0;
    std::string rest;
    if (!(ls >> n >> an) || (ls >> rest)) throw ParseError(where + "expected '<n> <a_n>'");
    if (n != static_cast<std::int64_t>(expected)) {
      if (expected == 1) throw ParseError(where + "coefficients must start at n = 1");
      throw ParseError(where + "expected n = " + std::to_string(expected));
    }
    f.coeffs.push_back(an);
    ++expected;
  }
  if (!have_level) throw ParseError(source + ": missing 'N <level>' header");
  if (f.coeffs.empty()) throw ParseError(source + ": no coefficients (a_1 missing)");
  f.label = source;
  validate_newform(f);
  return f;
}

Newform load_newform(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ParseError("cannot open newform file '" + path + "'");
  return parse_newform(in, path);
}

std::size_t required_terms(double height, double eps) {
  if (!(height > 0.0)) throw DomainError("height must be positive");
  const double log_r = -kTwoPi * height;
  const double one_minus_r = -std::expm1(log_r);
  // 2 r^{M+1} / (1 - r) < eps  <=>  (M + 1) log r < log(eps (1 - r) / 2)
  const double target = std::log(eps * one_minus_r / 2.0);
  const double m_plus_1 = target / log_r;
  return static_cast<std::size_t>(std::max(1.0, std::ceil(m_plus_1)));
}

std::complex<double> antiderivative_F(const Newform& f, std::complex<double> tau, double eps) {
  if (!(tau.imag() > 0.0)) throw DomainError("tau must lie in the upper half-plane");
  const std::size_t m = required_terms(tau.imag(), eps);
  if (m > f.n_max())
    throw InsufficientCoefficients("need " + std::to_string(m) + " coefficients, have " +
                                   std::to_string(f.n_max()));
  const std::complex<double> z = std::exp(std::complex<double>(0.0, kTwoPi) * tau);
  std::complex<double> zn = z;
  std::complex<double> sum = 0.0;
  for (std::size_t n = 1; n <= m; ++n) {
    if (f.coeffs[n - 1] != 0.0) sum += (f.coeffs[n - 1] / static_cast<double>(n)) * zn;
    zn *= z;
  }
  return sum;
}

std::complex<double> modular_symbol(const Newform& f, std::int64_t a, std::int64_t q, double eps,
                                    double pivot_height) {
  if (q == 0) throw DomainError("denominator must be nonzero");
  if (q < 0) {
    a = -a;
    q = -q;
  }
  if (q % f.level != 0)
    throw LevelMismatch("level " + std::to_string(f.level) + " does not divide q = " + std::to_string(q));
  if (std::gcd(a, q) != 1) throw NonCoprime("a/q is not reduced");
  if (!(pivot_height > 0.0)) throw DomainError("pivot height must be positive");
  const std::int64_t d = inverse_mod(a, q);
  const double qd = static_cast<double>(q);
  const std::complex<double> tau(static_cast<double>(pos_mod(a, q)) / qd, pivot_height / qd);
  const std::complex<double> moved(-static_cast<double>(d) / qd, 1.0 / (pivot_height * qd));
  return antiderivative_F(f, moved, eps) - antiderivative_F(f, tau, eps);
}

SymbolTable::SymbolTable(const Newform& f, std::int64_t q, double eps) : q_(q) {
  if (q < 1) throw DomainError("table denominator must be positive");
  const double height = 1.0 / static_cast<double>(q);
  const std::size_t m = required_terms(height, eps);
  if (m > f.n_max())
    throw InsufficientCoefficients("need " + std::to_string(m) + " coefficients, have " +
                                   std::to_string(f.n_max()));
  const auto uq = static_cast<std::size_t>(q);
  std::vector<double> folded(uq, 0.0);
  const double r = std::exp(-kTwoPi * height);
  double rn = 1.0;
  for (std::size_t n = 1; n <= m; ++n) {
    rn *= r;
    if (f.coeffs[n - 1] != 0.0) folded[n % uq] += f.coeffs[n - 1] / static_cast<double>(n) * rn;
  }
  std::vector<std::complex<double>> twiddle(uq);
  for (std::size_t j = 0; j < uq; ++j) {
    const double angle = kTwoPi * static_cast<double>(j) / static_cast<double>(q);
    twiddle[j] = {std::cos(angle), std::sin(angle)};
  }
  g_.assign(uq, 0.0);
  // G[q - x] = conj(G[x]) because the coefficients are real.
  for (std::size_t x = 0; x <= uq / 2; ++x) {
    std::complex<double> acc = 0.0;
    std::size_t idx = 0;
    for (std::size_t k = 0; k < uq; ++k) {
      acc += folded[k] * twiddle[idx];
      idx += x;
      if (idx >= uq) idx -= uq;
    }
    g_[x] = acc;
    if (x != 0) g_[uq - x] = std::conj(acc);
  }
}

std::complex<double> SymbolTable::F_at(std::int64_t x) const {
  return g_[static_cast<std::size_t>(pos_mod(x, q_))];
}

std::complex<double> SymbolTable::symbol(std::int64_t a) const {
  const std::int64_t d = inverse_mod(a, q_);
  return F_at(-d) - F_at(a);
}

double parity_leak_tolerance(double eps) { return std::max(10.0 * eps, 1e-10); }

SymmetrizedSymbol symmetrize(std::complex<double> at_r, std::complex<double> at_minus_r, double leak_tol) {
  const std::complex<double> plus = at_r + at_minus_r;
  const std::complex<double> minus = at_r - at_minus_r;
  if (std::abs(plus.imag()) > leak_tol || std::abs(minus.real()) > leak_tol) {
    std::ostringstream msg;
    msg << "parity leak: Im(s+) = " << plus.imag() << ", Re(s-) = " << minus.real();
    throw ParityLeak(msg.str());
  }
  return {plus.real(), minus.imag()};
}

SymmetrizedSymbol symmetrized_symbols(const Newform& f, std::int64_t a, std::int64_t q, double eps) {
  return symmetrize(modular_symbol(f, a, q, eps), modular_symbol(f, -a, q, eps), parity_leak_tolerance(eps));
}

ModularSymbolOracle::ModularSymbolOracle(Newform f, double eps) : f_(std::move(f)), eps_(eps) {
  if (f_.coeffs.empty()) throw DomainError("newform has no coefficients");
}

void ModularSymbolOracle::precompute(std::int64_t q_max, unsigned workers) {
  std::vector<std::int64_t> qs;
  for (std::int64_t q = f_.level; q <= q_max; q += f_.level)
    if (!tables_.count(q)) qs.push_back(q);
  auto tables = run_blocks<SymbolTable>(qs.size(), workers,
                                        [&](std::size_t i) { return SymbolTable(f_, qs[i], eps_); });
  for (std::size_t i = 0; i < qs.size(); ++i) tables_.emplace(qs[i], std::move(tables[i]));
}

std::complex<double> ModularSymbolOracle::symbol(std::int64_t a, std::int64_t q) const {
  if (q == 0) throw DomainError("denominator must be nonzero");
  if (q < 0) {
    a = -a;
    q = -q;
  }
  if (q % f_.level != 0)
    throw LevelMismatch("level " + std::to_string(f_.level) + " does not divide q = " + std::to_string(q));
  if (std::gcd(a, q) != 1) throw NonCoprime("a/q is not reduced");
  if (auto it = tables_.find(q); it != tables_.end()) return it->second.symbol(a);
  return modular_symbol(f_, a, q, eps_);
}

SymmetrizedSymbol ModularSymbolOracle::symmetrized(std::int64_t a, std::int64_t q) const {
  return symmetrize(symbol(a, q), symbol(-a, q), parity_leak_tolerance(eps_));
}

std::optional<RationalApprox> rationalize(double x, std::int64_t max_den, double tol) {
  if (!std::isfinite(x)) return std::nullopt;
  // Convergents h_k / k_k of the continued fraction of x.
  std::int64_t h_prev = 1, h_prev2 = 0, k_prev = 0, k_prev2 = 1;
  double rem = x;
  for (int iter = 0; iter < 64; ++iter) {
    const double fl = std::floor(rem);
    if (std::abs(fl) > 9e15) return std::nullopt;
    const auto ai = static_cast<std::int64_t>(fl);
    const std::int64_t h = ai * h_prev + h_prev2;
    const std::int64_t k = ai * k_prev + k_prev2;
    if (k > max_den) return std::nullopt;
    if (std::abs(x - static_cast<double>(h) / static_cast<double>(k)) <= tol) return RationalApprox{h, k};
    const double frac = rem - fl;
    if (frac <= 0.0) return std::nullopt;
    rem = 1.0 / frac;
    h_prev2 = h_prev;
    h_prev = h;
    k_prev2 = k_prev;
    k_prev = k;
  }
  return std::nullopt;
}

double lattice_generator(const std::vector<double>& samples, std::int64_t max_den, double rel_tol) {
  double scale = 0.0;
  for (double s : samples) scale = std::max(scale, std::abs(s));
  if (scale == 0.0) throw LatticeDetectionFailed("all samples vanish");
  const double zero_tol = 1e-7 * scale;
  double x0 = scale;
  for (double s : samples)
    if (std::abs(s) > zero_tol) x0 = std::min(x0, std::abs(s));

  std::int64_t lcm_den = 1;
  std::vector<RationalApprox> ratios;
  for (double s : samples) {
    if (std::abs(s) <= zero_tol) continue;
    const double ratio = s / x0;
    auto r = rationalize(ratio, max_den, rel_tol * std::max(1.0, std::abs(ratio)));
    if (!r) {
      std::ostringstream msg;
      msg << "sample ratio " << ratio << " has no rational approximation with denominator <= " << max_den;
      throw LatticeDetectionFailed(msg.str());
    }
    lcm_den = std::lcm(lcm_den, r->den);
    if (lcm_den > max_den) throw LatticeDetectionFailed("common denominator exceeds the bound");
    ratios.push_back(*r);
  }
  std::int64_t g = 0;
  for (const auto& r : ratios) g = std::gcd(g, std::abs(r.num) * (lcm_den / r.den));
  double gen = x0 * static_cast<double>(g) / static_cast<double>(lcm_den);
  // Least-squares refinement against the integer multiples.
  double num = 0.0, den = 0.0;
  for (double s : samples) {
    const double k = std::round(s / gen);
    num += k * s;
    den += k * k;
  }
  if (den > 0.0) gen = num / den;
  return gen;
}

int p_adic_valuation(std::int64_t n, std::int64_t p) {
  if (n == 0) return std::numeric_limits<int>::max();
  int v = 0;
  n = std::abs(n);
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

RationalApprox normalized_rational(const SymmetrizedSymbol& s, const PeriodLattice& lattice, SymbolSign sign) {
  const double value = (sign == SymbolSign::Plus ? s.plus : s.minus) / lattice.omega(sign);
  auto r = rationalize(value, lattice.denom_bound, 1e-8 * std::max(1.0, std::abs(value)));
  if (!r) {
    std::ostringstream msg;
    msg << "cannot reconstruct " << value << " with denominator <= " << lattice.denom_bound;
    throw ReconstructionFailed(msg.str());
  }
  return *r;
}

RationalApprox normalized_rational(const ModularSymbolOracle& oracle, const PeriodLattice& lattice,
                                   std::int64_t a, std::int64_t q, SymbolSign sign) {
  try {
    return normalized_rational(oracle.symmetrized(a, q), lattice, sign);
  } catch (const ReconstructionFailed& e) {
    throw ReconstructionFailed(std::string(e.what()) + " at " + std::to_string(a) + "/" + std::to_string(q));
  }
}

PeriodLattice detect_periods(const ModularSymbolOracle& oracle, std::int64_t p, std::int64_t q0,
                             std::int64_t denom_bound) {
  if (!is_prime(p)) throw DomainError("p must be prime");
  if (q0 < 2 * oracle.level()) throw DomainError("Q0 must be at least twice the level");
  if (denom_bound < 2) throw DomainError("denominator bound must be >= 2");
  std::vector<double> plus, minus;
  for (std::int64_t q = oracle.level(); q <= q0; q += oracle.level()) {
    for (std::int64_t a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      const auto s = oracle.symmetrized(a, q);
      plus.push_back(s.plus);
      minus.push_back(s.minus);
    }
  }
  PeriodLattice lat;
  lat.p = p;
  lat.q0 = q0;
  lat.denom_bound = denom_bound;
  lat.omega_plus = lattice_generator(plus, denom_bound);
  lat.omega_minus = lattice_generator(minus, denom_bound);
  auto min_valuation = [&](const std::vector<double>& samples, double omega) {
    int v = std::numeric_limits<int>::max();
    for (double s : samples) {
      const double x = s / omega;
      const auto r = rationalize(x, denom_bound, 1e-8 * std::max(1.0, std::abs(x)));
      if (!r) throw LatticeDetectionFailed("sample does not reconstruct against the detected period");
      if (r->num == 0) continue;
      v = std::min(v, p_adic_valuation(r->num, p) - p_adic_valuation(r->den, p));
    }
    return v == std::numeric_limits<int>::max() ? 0 : v;
  };
  lat.v_plus = min_valuation(plus, lat.omega_plus);
  lat.v_minus = min_valuation(minus, lat.omega_minus);
  return lat;
}

std::int64_t reduce_mod_p(const RationalApprox& r, int valuation, std::int64_t p) {
  std::int64_t num = r.num, den = r.den;
  int v = valuation;
  while (v > 0 && num % p == 0 && num != 0) {
    num /= p;
    --v;
  }
  if (num == 0) return 0;
  if (v > 0 || den % p == 0)
    throw DenominatorDivisibleByP("normalized symbol " + std::to_string(r.num) + "/" + std::to_string(r.den) +
                                  " is not p-integral for p = " + std::to_string(p));
  // Negative valuation multiplies by p.
  for (; v < 0; ++v) num = (num % p) * p;
  return pos_mod(pos_mod(num, p) * inverse_mod(pos_mod(den, p), p), p);
}

std::int64_t normalized_symbol_mod_p(const ModularSymbolOracle& oracle, const PeriodLattice& lattice,
                                     std::int64_t a, std::int64_t q, SymbolSign sign) {
  const auto r = normalized_rational(oracle, lattice, a, q, sign);
  return reduce_mod_p(r, lattice.valuation(sign), lattice.p);
}

}  // namespace hypsym
