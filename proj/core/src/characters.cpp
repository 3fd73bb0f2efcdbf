#include "hypsym/characters.hpp"

#include <cmath>
#include <numeric>
#include <random>
#include <sstream>

namespace hypsym {

IntMatrix to_int_matrix(const DoubleCosetRep& rep) {
  if (rep.a.y != 0 || rep.b.y != 0 || rep.c.y != 0 || rep.d.y != 0)
    throw UnsupportedVariant("representative is not an integer matrix");
  return {rep.a.x, rep.b.x, rep.c.x, rep.d.x};
}

bool in_gamma0(const IntMatrix& m, std::int64_t level) {
  return m.det() == 1 && m.c % level == 0;
}

DirichletCharacter::DirichletCharacter(std::int64_t modulus, std::int64_t order, std::int64_t generator)
    : modulus_(modulus), order_(order) {
  if (!is_prime(modulus)) throw InvalidDescriptor("character modulus must be prime");
  if (order < 1 || (modulus - 1) % order != 0)
    throw InvalidDescriptor("character order must divide N - 1");
  generator_ = generator == 0 ? smallest_primitive_root(modulus) : pos_mod(generator, modulus);
  dlog_.assign(static_cast<std::size_t>(modulus), -1);
  std::int64_t x = 1;
  for (std::int64_t k = 0; k < modulus - 1; ++k) {
    if (dlog_[static_cast<std::size_t>(x)] != -1) throw InvalidDescriptor("generator is not a primitive root");
    dlog_[static_cast<std::size_t>(x)] = k;
    x = x * generator_ % modulus;
  }
}

std::int64_t DirichletCharacter::dlog(std::int64_t a) const {
  const std::int64_t r = pos_mod(a, modulus_);
  const std::int64_t k = dlog_[static_cast<std::size_t>(r)];
  if (k < 0) throw NotInGroup(std::to_string(a) + " is not a unit mod " + std::to_string(modulus_));
  return k;
}

std::int64_t DirichletCharacter::value_exact(std::int64_t a) const {
  return pos_mod(dlog(a) % order_ * exponent_, order_);
}

double DirichletCharacter::value(std::int64_t a) const {
  return static_cast<double>(value_exact(a)) / static_cast<double>(order_);
}

DirichletCharacter DirichletCharacter::power(std::int64_t e) const {
  DirichletCharacter out = *this;
  out.exponent_ = pos_mod(exponent_ * e, order_);
  return out;
}

bool CocycleValue::is_zero(double tol) const {
  if (is_exact()) return pos_mod(exact, order) == 0;
  return circle_distance(value, 0.0) <= tol;
}

double circle_distance(double x, double y) {
  double d = std::fmod(std::abs(x - y), 1.0);
  return std::min(d, 1.0 - d);
}

namespace {

double frac(double x) {
  double f = x - std::floor(x);
  if (f >= 1.0) f = 0.0;
  return f;
}

CocycleValue exact_value(std::int64_t k, std::int64_t order) {
  const std::int64_t r = pos_mod(k, order);
  return {static_cast<double>(r) / static_cast<double>(order), r, order};
}

CocycleValue real_value(double x) { return {frac(x), 0, 0}; }

}  // namespace

CocycleValue add(const CocycleValue& x, const CocycleValue& y) {
  if (x.is_exact() && y.is_exact()) {
    const std::int64_t l = std::lcm(x.order, y.order);
    return exact_value(x.exact * (l / x.order) + y.exact * (l / y.order), l);
  }
  return real_value(x.value + y.value);
}

CocycleValue scale(const CocycleValue& x, std::int64_t n) {
  if (x.is_exact()) return exact_value(pos_mod(x.exact * pos_mod(n, x.order), x.order), x.order);
  return real_value(x.value * static_cast<double>(n));
}

CocycleValue negate(const CocycleValue& x) { return scale(x, -1); }

Cocycle Cocycle::trivial() { return Cocycle(); }

Cocycle Cocycle::dirichlet_entry(DirichletCharacter chi) {
  Cocycle c;
  c.kind_ = CocycleKind::DirichletEntry;
  c.chi_ = std::make_shared<const DirichletCharacter>(std::move(chi));
  return c;
}

Cocycle Cocycle::modular_symbol_mod_p(std::shared_ptr<const ModularSymbolOracle> oracle, PeriodLattice lattice,
                                      SymbolSign sign) {
  if (!oracle) throw InvalidDescriptor("modular symbol cocycle needs an oracle");
  Cocycle c;
  c.kind_ = CocycleKind::ModularSymbolModP;
  c.oracle_ = std::move(oracle);
  c.lattice_ = lattice;
  c.sign_ = sign;
  return c;
}

Cocycle Cocycle::modular_symbol_mod1(std::shared_ptr<const ModularSymbolOracle> oracle, Mod1Component component) {
  if (!oracle) throw InvalidDescriptor("modular symbol cocycle needs an oracle");
  Cocycle c;
  c.kind_ = CocycleKind::ModularSymbolMod1;
  c.oracle_ = std::move(oracle);
  c.component_ = component;
  return c;
}

std::int64_t Cocycle::order() const {
  switch (kind_) {
    case CocycleKind::Trivial: return 1;
    case CocycleKind::DirichletEntry: return chi_->order();
    case CocycleKind::ModularSymbolModP: return lattice_.p;
    case CocycleKind::ModularSymbolMod1: return 0;
  }
  return 0;
}

std::int64_t Cocycle::level() const {
  switch (kind_) {
    case CocycleKind::Trivial: return 1;
    case CocycleKind::DirichletEntry: return chi_->modulus();
    case CocycleKind::ModularSymbolModP:
    case CocycleKind::ModularSymbolMod1: return oracle_->level();
  }
  return 1;
}

std::string Cocycle::describe() const {
  std::ostringstream out;
  switch (kind_) {
    case CocycleKind::Trivial: out << "trivial"; break;
    case CocycleKind::DirichletEntry:
      out << "dirichlet(N=" << chi_->modulus() << ", order=" << chi_->order() << ", g=" << chi_->generator() << ")";
      break;
    case CocycleKind::ModularSymbolModP:
      out << "modsym_mod_p(N=" << oracle_->level() << ", p=" << lattice_.p
          << ", sign=" << (sign_ == SymbolSign::Plus ? "+" : "-") << ")";
      break;
    case CocycleKind::ModularSymbolMod1:
      out << "modsym_mod1(N=" << oracle_->level() << ", " << (component_ == Mod1Component::Re ? "Re" : "Im") << ")";
      break;
  }
  return out.str();
}

CocycleValue Cocycle::evaluate_cusp(std::int64_t a, std::int64_t c) const {
  switch (kind_) {
    case CocycleKind::Trivial: return exact_value(0, 1);
    case CocycleKind::DirichletEntry: return exact_value(chi_->value_exact(a), chi_->order());
    case CocycleKind::ModularSymbolModP: {
      if (c == 0) return exact_value(0, lattice_.p);
      const auto s = oracle_->symmetrized(a, c);
      const auto r = normalized_rational(s, lattice_, sign_);
      return exact_value(reduce_mod_p(r, lattice_.valuation(sign_), lattice_.p), lattice_.p);
    }
    case CocycleKind::ModularSymbolMod1: {
      if (c == 0) return real_value(0.0);
      const auto z = oracle_->symbol(a, c);
      return real_value(component_ == Mod1Component::Re ? z.real() : z.imag());
    }
  }
  return exact_value(0, 1);
}

CocycleValue Cocycle::evaluate(const IntMatrix& g) const {
  if (g.det() != 1) throw NotInGroup("determinant is not 1");
  if (g.c % level() != 0) throw NotInGroup("lower-left entry is not divisible by the level");
  return evaluate_cusp(g.a, g.c);
}

CocycleValue Cocycle::evaluate(const GroupDescriptor& desc, const DoubleCosetRep& rep) const {
  if (desc.ring().is_integers()) return evaluate(to_int_matrix(rep));
  if (kind_ == CocycleKind::Trivial) return exact_value(0, 1);
  throw UnsupportedVariant("only the trivial cocycle is available over O_K");
}

IntMatrix hecke_alpha(std::int64_t r, std::int64_t l) {
  if (r < l) return {1, r, 0, l};
  return {l, 0, 0, 1};
}

namespace {

IntMatrix adjugate(const IntMatrix& m) { return {m.d, -m.b, -m.c, m.a}; }

}  // namespace

std::vector<HeckeTerm> hecke_decompose(const IntMatrix& g, std::int64_t l, std::int64_t level) {
  if (!is_prime(l)) throw DomainError("Hecke index must be prime");
  if (level % l == 0) throw DomainError("Hecke prime must not divide the level");
  if (!in_gamma0(g, level)) throw NotInGroup("matrix is not in Gamma0(N)");
  std::vector<HeckeTerm> out;
  std::vector<bool> used(static_cast<std::size_t>(l + 1), false);
  for (std::int64_t r = 0; r <= l; ++r) {
    const IntMatrix left = hecke_alpha(r, l) * g;
    bool found = false;
    for (std::int64_t s = 0; s <= l && !found; ++s) {
      const IntMatrix m = left * adjugate(hecke_alpha(s, l));
      if (m.a % l || m.b % l || m.c % l || m.d % l) continue;
      const IntMatrix gr{m.a / l, m.b / l, m.c / l, m.d / l};
      if (gr.c % level != 0 || gr.det() != 1) continue;
      if (used[static_cast<std::size_t>(s)])
        throw DecompositionFailed("sigma is not injective at r = " + std::to_string(r));
      used[static_cast<std::size_t>(s)] = true;
      out.push_back({gr, static_cast<int>(r), static_cast<int>(s)});
      found = true;
    }
    if (!found) throw DecompositionFailed("no integral gamma_{r,l} for r = " + std::to_string(r));
  }
  return out;
}

CocycleValue hecke_Tl_apply(const Cocycle& omega, std::int64_t l, const IntMatrix& g, std::int64_t level) {
  CocycleValue sum = omega.order() > 0 ? CocycleValue{0.0, 0, omega.order()} : CocycleValue{0.0, 0, 0};
  for (const auto& term : hecke_decompose(g, l, level)) sum = add(sum, omega.evaluate(term.gamma_r));
  return sum;
}

IntMatrix atkin_lehner_conjugate(const IntMatrix& g, std::int64_t level) {
  if (g.c % level != 0) throw ConjugateNotIntegral("lower-left entry is not divisible by N");
  return {g.d, g.c / level, level * g.b, g.a};
}

CocycleValue atkin_lehner_apply(const Cocycle& omega, const IntMatrix& g, std::int64_t level) {
  return omega.evaluate(atkin_lehner_conjugate(g, level));
}

GeneralPositionReport check_general_position(const std::vector<Cocycle>& cocycles,
                                             const std::vector<IntMatrix>& sample) {
  GeneralPositionReport report;
  const std::size_t d = cocycles.size();
  std::vector<std::int64_t> orders(d);
  std::int64_t total = 1;
  for (std::size_t i = 0; i < d; ++i) {
    orders[i] = cocycles[i].order();
    if (orders[i] <= 0) {
      report.checked = false;
      report.note = "infinite-order cocycle present; check skipped";
      return report;
    }
    total *= orders[i];
    if (total > 5'000'000) {
      report.checked = false;
      report.note = "coefficient space too large";
      return report;
    }
  }
  // values[j][i] = exact value of omega_i on sample j
  std::vector<std::vector<std::int64_t>> values(sample.size(), std::vector<std::int64_t>(d));
  for (std::size_t j = 0; j < sample.size(); ++j)
    for (std::size_t i = 0; i < d; ++i) values[j][i] = cocycles[i].evaluate(sample[j]).exact;
  std::int64_t lcm = 1;
  for (auto m : orders) lcm = std::lcm(lcm, m);

  std::vector<std::int64_t> n(d, 0);
  for (std::int64_t idx = 0; idx < total; ++idx) {
    std::int64_t rest = idx;
    for (std::size_t i = 0; i < d; ++i) {
      n[i] = rest % orders[i];
      rest /= orders[i];
    }
    bool combination_vanishes = true;
    for (std::size_t j = 0; j < sample.size() && combination_vanishes; ++j) {
      std::int64_t acc = 0;
      for (std::size_t i = 0; i < d; ++i) acc += n[i] * values[j][i] % orders[i] * (lcm / orders[i]);
      combination_vanishes = pos_mod(acc, lcm) == 0;
    }
    if (!combination_vanishes) continue;
    bool each_vanishes = true;
    for (std::size_t j = 0; j < sample.size() && each_vanishes; ++j)
      for (std::size_t i = 0; i < d; ++i)
        if (n[i] * values[j][i] % orders[i] != 0) {
          each_vanishes = false;
          break;
        }
    if (!each_vanishes) {
      report.in_general_position = false;
      report.violations.push_back(n);
    }
  }
  return report;
}

std::vector<IntMatrix> sample_gamma0(std::int64_t level, std::size_t count, std::uint64_t seed,
                                     std::int64_t c_bound) {
  if (level < 1 || c_bound < level) throw DomainError("sample_gamma0 needs 1 <= level <= c_bound");
  std::mt19937_64 rng(seed);
  // Plain modular reduction keeps the stream identical across standard libraries.
  auto uniform = [&](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  const std::int64_t k_max = c_bound / level;
  std::vector<IntMatrix> out;
  out.reserve(count);
  while (out.size() < count) {
    const std::int64_t c = level * uniform(-k_max, k_max);
    IntMatrix g;
    if (c == 0) {
      const std::int64_t s = uniform(0, 1) == 0 ? 1 : -1;
      g = {s, uniform(-c_bound, c_bound), 0, s};
    } else {
      const std::int64_t a = uniform(-c_bound, c_bound);
      if (std::gcd(a, c) != 1) continue;
      const std::int64_t m = std::abs(c);
      const std::int64_t d = inverse_mod(pos_mod(a, m), m);
      // a d - b c = 1 with c possibly negative
      const std::int64_t b = (a * d - 1) / c;
      g = {a, b, c, d};
    }
    const std::int64_t t = uniform(-5, 5);
    g = g * IntMatrix{1, t, 0, 1};
    if (g.det() != 1 || !in_gamma0(g, level)) throw DomainError("sample_gamma0 produced a non-member");
    out.push_back(g);
  }
  return out;
}

}  // namespace hypsym
