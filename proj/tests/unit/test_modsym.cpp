#include "doctest.h"
#include "support.hpp"

#include "hypsym/characters.hpp"
#include "hypsym/groups.hpp"
#include "hypsym/modsym.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>

#include <cmath>
#include <complex>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>

using namespace hypsym;
using cd = std::complex<double>;

namespace {

const Newform& form11() {
  static const Newform f = eta_product_coefficients(100000);
  return f;
}

std::shared_ptr<ModularSymbolOracle> oracle11() {
  static auto o = [] {
    auto p = std::make_shared<ModularSymbolOracle>(form11());
    p->precompute(1100);
    return p;
  }();
  return o;
}

// f(tau) summed term by term with one exponential per term.
cd eval_f(const Newform& f, cd tau) {
  cd acc = 0;
  for (std::size_t n = 1; n <= f.n_max(); ++n) {
    const cd qn = std::exp(cd(0, 2 * std::numbers::pi * static_cast<double>(n)) * tau);
    if (std::abs(qn) < 1e-20) break;
    acc += f.a(n) * qn;
  }
  return acc;
}

}  // namespace

TEST_CASE("eta product coefficients") {
  // oracle: naive product of (1 - q^k)^2 (1 - q^{11k})^2 truncated at degree 200
  const int M = 200;
  std::vector<long long> poly(M, 0);
  poly[0] = 1;
  auto times_one_minus = [&](int k) {
    for (int i = M - 1; i >= k; --i) poly[i] -= poly[i - k];
  };
  for (int k = 1; k < M; ++k) {
    times_one_minus(k);
    times_one_minus(k);
    if (11 * k < M) {
      times_one_minus(11 * k);
      times_one_minus(11 * k);
    }
  }
  auto f = eta_product_coefficients(M);
  CHECK(f.level == 11);
  CHECK(f.a(1) == 1);
  CHECK(f.a(2) == -2);
  CHECK(f.a(3) == -1);
  for (int n = 1; n <= M; ++n) CHECK(f.a(n) == static_cast<double>(poly[n - 1]));
  CHECK_NOTHROW(validate_newform(f));
}

TEST_CASE("newform files") {
  auto f = load_newform(std::string(HYPSYM_TEST_DATA_DIR) + "/level11_head.txt");
  CHECK(f.level == 11);
  CHECK(f.n_max() == 10);
  CHECK(f.a(7) == -2);
  CHECK_THROWS_AS(load_newform(std::string(HYPSYM_TEST_DATA_DIR) + "/missing_a1.txt"), ParseError);
  CHECK_THROWS_AS(load_newform(std::string(HYPSYM_TEST_DATA_DIR) + "/bound_violation.txt"), BoundViolation);
  CHECK_THROWS_AS(load_newform(std::string(HYPSYM_TEST_DATA_DIR) + "/does_not_exist.txt"), ParseError);

  std::istringstream minimal("N 11\n1 1\n2 -2\n3 -1\n");
  CHECK(parse_newform(minimal).n_max() == 3);
  std::istringstream no_header("1 1\n2 -2\n");
  CHECK_THROWS_AS(parse_newform(no_header), ParseError);
  std::istringstream gap("N 11\n1 1\n3 -1\n");
  CHECK_THROWS_AS(parse_newform(gap), ParseError);
  std::istringstream junk("N 11\n1 1\n2 x\n");
  try {
    parse_newform(junk, "junk");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(std::string(e.what()).find("junk:3") != std::string::npos);
  }
  CHECK(divisor_count(12) == 6);
  CHECK(divisor_count(1) == 1);
}

TEST_CASE("antiderivative F") {
  Newform zero{11, std::vector<double>(5000, 0.0), "zero"};
  CHECK(std::abs(antiderivative_F(zero, cd(0.1, 0.5))) == 0.0);

  const auto& f = form11();
  const cd high(0.3, 4.0);
  const cd lead = std::exp(cd(0, 2 * std::numbers::pi) * high);
  CHECK(std::abs(antiderivative_F(f, high) - lead) < 1e-20);

  Newform short_form{11, std::vector<double>(f.coeffs.begin(), f.coeffs.begin() + 10), "short"};
  CHECK_THROWS_AS(antiderivative_F(short_form, cd(0, 0.01)), InsufficientCoefficients);
  CHECK_THROWS_AS(antiderivative_F(f, cd(0, -1)), DomainError);

  // F(tau) = 2 pi int_t^inf f(x + i u) du along the vertical ray
  boost::math::quadrature::exp_sinh<double> integrator;
  Newform head{11, std::vector<double>(f.coeffs.begin(), f.coeffs.begin() + 2000), "head"};
  testing::Rng rng(31);
  for (int k = 0; k < 10; ++k) {
    const cd tau(testing::uniform_real(rng, -0.5, 0.5), testing::uniform_real(rng, 0.05, 1.0));
    auto part = [&](bool imag) {
      return integrator.integrate(
          [&](double u) {
            const cd v = eval_f(head, cd(tau.real(), tau.imag() + u));
            return imag ? v.imag() : v.real();
          },
          1e-13);
    };
    const cd quad = 2 * std::numbers::pi * cd(part(false), part(true));
    CHECK(std::abs(antiderivative_F(f, tau) - quad) < 1e-9);
  }
}

TEST_CASE("modular symbols") {
  const auto& f = form11();
  for (std::int64_t q : {11, 22, 77}) {
    for (std::int64_t a = 1; a < q; ++a) {
      if (std::gcd(a, q) != 1) continue;
      const cd s = modular_symbol(f, a, q);
      CHECK(std::abs(modular_symbol(f, a + q, q) - s) < 1e-10);
      CHECK(std::abs(modular_symbol(f, a, q, 1e-12, 2.0) - s) < 1e-10);
      CHECK(std::abs(oracle11()->symbol(a, q) - s) < 1e-10);
    }
  }
  CHECK(std::abs((modular_symbol(f, 1, 11) + modular_symbol(f, -1, 11)).imag()) < 1e-10);
  CHECK_THROWS_AS(modular_symbol(f, 1, 12), LevelMismatch);
}

TEST_CASE("symmetrized symbols") {
  auto o = oracle11();
  for (std::int64_t a : {1, 2, 3, 5}) {
    auto s = o->symmetrized(a, 11), t = o->symmetrized(-a, 11);
    CHECK(t.plus == doctest::Approx(s.plus).epsilon(1e-12));
    CHECK(t.minus == doctest::Approx(-s.minus).epsilon(1e-12));
  }
  Newform zero{11, std::vector<double>(5000, 0.0), "zero"};
  auto z = symmetrized_symbols(zero, 1, 11);
  CHECK(z.plus == 0.0);
  CHECK(z.minus == 0.0);
  CHECK_THROWS_AS(symmetrize(cd(1, 0), cd(1, 1e-3), 1e-10), ParityLeak);

  // s+(2/11) / s+(3/11) is a small rational
  const double ratio = o->symmetrized(2, 11).plus / o->symmetrized(3, 11).plus;
  auto r = rationalize(ratio, 50, 1e-9);
  REQUIRE(r.has_value());
  CHECK(r->den <= 50);
  CHECK(rationalize(std::numbers::pi, 50, 1e-9) == std::nullopt);
}

TEST_CASE("lattice generator") {
  const std::vector<double> samples{0.6, -1.5, 2.1, 0.0, 0.9};
  CHECK(lattice_generator(samples, 100) == doctest::Approx(0.3));
  std::vector<double> scaled;
  for (double s : samples) scaled.push_back(7 * s);
  CHECK(lattice_generator(scaled, 100) == doctest::Approx(2.1));
  CHECK_THROWS_AS(lattice_generator({1.0, std::numbers::pi}, 100), LatticeDetectionFailed);
  CHECK_THROWS_AS(lattice_generator({0.0}, 100), LatticeDetectionFailed);
}

TEST_CASE("periods and reduction mod p") {
  auto o = oracle11();
  auto lat = detect_periods(*o, 5, 110);
  CHECK(lat.omega_plus > 0);
  CHECK(lat.omega_minus > 0);

  // all normalized values are 5-integral and not all divisible by 5
  bool some_unit = false;
  for (auto [a, q] : outcome_space_rationals(11, 550)) {
    for (auto sign : {SymbolSign::Plus, SymbolSign::Minus}) {
      auto r = normalized_rational(*o, lat, a, q, sign);
      CHECK(r.den % 5 != 0);
      if (sign == SymbolSign::Plus && r.num % 5 != 0) some_unit = true;
    }
  }
  CHECK(some_unit);

  auto twice = detect_periods(*o, 5, 220);
  CHECK(twice.omega_plus == doctest::Approx(lat.omega_plus).epsilon(1e-9));
  CHECK(twice.omega_minus == doctest::Approx(lat.omega_minus).epsilon(1e-9));
  CHECK(twice.v_plus == lat.v_plus);
  CHECK(twice.v_minus == lat.v_minus);

  for (auto [a, q] : outcome_space_rationals(11, 110)) {
    const auto mp = normalized_symbol_mod_p(*o, lat, a, q, SymbolSign::Plus);
    const auto mm = normalized_symbol_mod_p(*o, lat, a, q, SymbolSign::Minus);
    CHECK(normalized_symbol_mod_p(*o, lat, -a, q, SymbolSign::Plus) == mp);
    CHECK(normalized_symbol_mod_p(*o, lat, -a, q, SymbolSign::Minus) == pos_mod(-mm, 5));
    CHECK(normalized_symbol_mod_p(*o, lat, a + q, q, SymbolSign::Plus) == mp);
  }

  // {m+(a/11)} = {m chi(a)} for the order-5 character mod 11
  DirichletCharacter chi(11, 5);
  const std::int64_t m = normalized_symbol_mod_p(*o, lat, 2, 11, SymbolSign::Plus);
  CHECK(m != 0);
  for (std::int64_t a = 1; a < 11; ++a)
    CHECK(normalized_symbol_mod_p(*o, lat, a, 11, SymbolSign::Plus) == (m * chi.value_exact(a)) % 5);

  CHECK(p_adic_valuation(250, 5) == 3);
  CHECK(reduce_mod_p({3, 2}, 0, 5) == 4);
  CHECK_THROWS_AS(reduce_mod_p({3, 10}, 0, 5), DenominatorDivisibleByP);
}

TEST_CASE("cocycle additivity of the modular symbol") {
  auto o = oracle11();
  auto re = Cocycle::modular_symbol_mod1(o, Mod1Component::Re);
  auto xs = sample_gamma0(11, 200, 7, 44), ys = sample_gamma0(11, 200, 8, 44);
  auto symbol_of = [&](const IntMatrix& g) { return g.c == 0 ? cd(0) : o->symbol(g.a, g.c); };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const cd lhs = symbol_of(xs[i] * ys[i]);
    const cd rhs = symbol_of(xs[i]) + symbol_of(ys[i]);
    CHECK(std::abs(lhs - rhs) < 1e-8);
    const double v = re.evaluate(xs[i] * ys[i]).value;
    const double w = add(re.evaluate(xs[i]), re.evaluate(ys[i])).value;
    CHECK(circle_distance(v, w) < 1e-8);
  }
}
