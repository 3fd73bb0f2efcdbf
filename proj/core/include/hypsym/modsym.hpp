#pragma once

// Numerical modular symbols of weight-2 newforms.
//
// F(tau) = sum_{n>=1} (a_n / n) e(n tau) is the antiderivative with
// 2 pi i int_tau^{i inf} f = -F(tau). For r = a/q and gamma = (a b; q d) in
// Gamma0(N) the symbol is <r, f> = F(gamma^{-1} tau) - F(tau) for any tau in H;
// the default pivot tau = (a + i)/q keeps both points at height 1/q.

#include "hypsym/errors.hpp"

#include <complex>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace hypsym {

struct Newform {
  std::int64_t level = 1;
  std::vector<double> coeffs;  // coeffs[n - 1] = a_n
  std::string label;

  std::size_t n_max() const { return coeffs.size(); }
  double a(std::size_t n) const { return coeffs.at(n - 1); }
};

// q prod (1 - q^k)^2 (1 - q^{11k})^2, the newform of level 11.
Newform eta_product_coefficients(std::size_t n_max);

// Format: "N <level>" then "<n> <a_n>" lines with n = 1, 2, 3, ... ; '#' starts a comment.
Newform parse_newform(std::istream& in, const std::string& source = "<stream>");
Newform load_newform(const std::string& path);
// a_1 = 1 and |a_n| <= d(n) sqrt(n); throws ParseError / BoundViolation.
void validate_newform(const Newform& f);

std::int64_t divisor_count(std::int64_t n);

// Smallest M with 2 r^{M+1} / (1 - r) < eps, r = exp(-2 pi height); the
// Deligne bound gives |a_n / n| <= 2.
std::size_t required_terms(double height, double eps);

// Throws InsufficientCoefficients when f has fewer than required_terms coefficients.
std::complex<double> antiderivative_F(const Newform& f, std::complex<double> tau, double eps = 1e-12);

// <a/q, f> with pivot tau = (a + i h)/q. Throws LevelMismatch unless N | q.
std::complex<double> modular_symbol(const Newform& f, std::int64_t a, std::int64_t q,
                                    double eps = 1e-12, double pivot_height = 1.0);

// All symbols with a fixed denominator q. F is tabulated at the q points
// (x + i)/q by folding the series mod q and a direct DFT.
class SymbolTable {
 public:
  SymbolTable() = default;
  SymbolTable(const Newform& f, std::int64_t q, double eps);

  std::int64_t q() const { return q_; }
  // F((x + i)/q)
  std::complex<double> F_at(std::int64_t x) const;
  std::complex<double> symbol(std::int64_t a) const;

 private:
  std::int64_t q_ = 1;
  std::vector<std::complex<double>> g_;
};

// s_plus = <r> + <-r> is real, s_minus = <r> - <-r> is imaginary; minus holds Im(s_minus).
struct SymmetrizedSymbol {
  double plus = 0.0;
  double minus = 0.0;
};

// Throws ParityLeak when the discarded component exceeds leak_tol.
SymmetrizedSymbol symmetrize(std::complex<double> at_r, std::complex<double> at_minus_r,
                             double leak_tol);
SymmetrizedSymbol symmetrized_symbols(const Newform& f, std::int64_t a, std::int64_t q,
                                      double eps = 1e-12);
double parity_leak_tolerance(double eps);

// Symbol evaluation with optional per-q tables. precompute() fills tables for
// every q <= q_max divisible by the level; afterwards all lookups are reads.
class ModularSymbolOracle {
 public:
  explicit ModularSymbolOracle(Newform f, double eps = 1e-12);

  void precompute(std::int64_t q_max, unsigned workers = 1);
  bool has_table(std::int64_t q) const { return tables_.count(q) != 0; }

  const Newform& form() const { return f_; }
  std::int64_t level() const { return f_.level; }
  double eps() const { return eps_; }

  // <a/q, f> for any q divisible by the level (q may be negative).
  std::complex<double> symbol(std::int64_t a, std::int64_t q) const;
  SymmetrizedSymbol symmetrized(std::int64_t a, std::int64_t q) const;

 private:
  Newform f_;
  double eps_;
  std::map<std::int64_t, SymbolTable> tables_;
};

enum class SymbolSign { Plus, Minus };

struct RationalApprox {
  std::int64_t num = 0;
  std::int64_t den = 1;
};

// Continued-fraction approximation u/w of x with w <= max_den and
// |x - u/w| <= tol; nullopt when no convergent qualifies.
std::optional<RationalApprox> rationalize(double x, std::int64_t max_den, double tol);

// Generator g > 0 of the rank-1 lattice spanned by the samples: every sample
// is an integer multiple of g. Throws LatticeDetectionFailed.
double lattice_generator(const std::vector<double>& samples, std::int64_t max_den, double rel_tol = 1e-9);

struct PeriodLattice {
  double omega_plus = 0.0;
  double omega_minus = 0.0;
  int v_plus = 0;
  int v_minus = 0;
  std::int64_t p = 2;
  std::int64_t q0 = 0;
  std::int64_t denom_bound = 10000;

  double omega(SymbolSign s) const { return s == SymbolSign::Plus ? omega_plus : omega_minus; }
  int valuation(SymbolSign s) const { return s == SymbolSign::Plus ? v_plus : v_minus; }
};

int p_adic_valuation(std::int64_t n, std::int64_t p);

PeriodLattice detect_periods(const ModularSymbolOracle& oracle, std::int64_t p, std::int64_t q0,
                             std::int64_t denom_bound = 10000);

// s_pm(a/q) / Omega_pm as an exact rational (before removing p^v).
RationalApprox normalized_rational(const ModularSymbolOracle& oracle, const PeriodLattice& lattice,
                                   std::int64_t a, std::int64_t q, SymbolSign sign);
RationalApprox normalized_rational(const SymmetrizedSymbol& s, const PeriodLattice& lattice,
                                   SymbolSign sign);

// m_pm(a/q) in F_p. Throws ReconstructionFailed / DenominatorDivisibleByP.
std::int64_t normalized_symbol_mod_p(const ModularSymbolOracle& oracle, const PeriodLattice& lattice,
                                     std::int64_t a, std::int64_t q, SymbolSign sign);
std::int64_t reduce_mod_p(const RationalApprox& r, int valuation, std::int64_t p);

}  // namespace hypsym
