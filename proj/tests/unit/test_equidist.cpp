#include "doctest.h"

#include "hypsym/analytic.hpp"
#include "hypsym/equidist.hpp"

#include <cmath>
#include <complex>
#include <memory>
#include <map>
#include <numbers>
#include <numeric>

using namespace hypsym;

namespace {

std::shared_ptr<ModularSymbolOracle> oracle11() {
  static auto o = [] {
    auto p = std::make_shared<ModularSymbolOracle>(eta_product_coefficients(6000));
    p->precompute(1100);
    return p;
  }();
  return o;
}

const PeriodLattice& lattice(std::int64_t p) {
  static std::map<std::int64_t, PeriodLattice> cache;
  auto it = cache.find(p);
  if (it == cache.end()) it = cache.emplace(p, detect_periods(*oracle11(), p, 110)).first;
  return it->second;
}

}  // namespace

TEST_CASE("Weyl sums") {
  auto g11 = GroupDescriptor::gamma0(11);
  std::vector<Cocycle> cs{Cocycle::modular_symbol_mod_p(oracle11(), lattice(3), SymbolSign::Plus),
                          Cocycle::modular_symbol_mod_p(oracle11(), lattice(3), SymbolSign::Minus)};
  const auto zero = weyl_sum(g11, cs, {{0, 0}, {0}}, 330);
  CHECK(zero.real() == static_cast<double>(count_double_cosets(g11, 330)));
  CHECK(zero.imag() == 0.0);

  const auto ram = weyl_sum(g11, {}, {{}, {1}}, 11);
  CHECK(ram.real() == doctest::Approx(-1.0));
  CHECK(std::abs(ram.imag()) < 1e-12);

  std::vector<WeylQuery> qs{{{1, 0}, {0}}, {{0, 1}, {1}}, {{2, 2}, {-1}}};
  auto rows = weyl_table(g11, cs, qs, 550, 1);
  auto rows4 = weyl_table(g11, cs, qs, 550, 4);
  for (std::size_t i = 0; i < qs.size(); ++i) {
    CHECK(rows[i].value == rows4[i].value);
    CHECK(rows[i].value == weyl_sum(g11, cs, qs[i], 550));
    CHECK(rows[i].ratio == doctest::Approx(std::abs(rows[i].value) / rows[i].count));
  }
  CHECK_THROWS_AS(weyl_sum(g11, cs, {{1}, {0}}, 100), DimensionMismatch);

  // independent loop over a/c with the normalized symbols read directly
  auto by_hand = [&](std::int64_t l1, std::int64_t l2, std::int64_t mu, std::int64_t x_max) {
    std::complex<double> acc = 0.0;
    for (std::int64_t c = 11; c <= x_max; c += 11)
      for (std::int64_t a = 1; a < c; ++a) {
        if (std::gcd(a, c) != 1) continue;
        const auto mp = normalized_symbol_mod_p(*oracle11(), lattice(3), a, c, SymbolSign::Plus);
        const auto mm = normalized_symbol_mod_p(*oracle11(), lattice(3), a, c, SymbolSign::Minus);
        const double t = static_cast<double>(l1 * mp + l2 * mm) / 3.0 + static_cast<double>(mu * a) / c;
        acc += std::polar(1.0, 2.0 * std::numbers::pi * t);
      }
    return acc;
  };
  for (std::int64_t x : {200, 1100}) {
    const auto q = weyl_sum(g11, cs, {{0, 1}, {-1}}, static_cast<double>(x));
    CHECK(std::abs(q - by_hand(0, 1, -1, x)) < 1e-9);
    CHECK(std::abs(q.imag()) < 1e-9);  // m- is odd and a -> c - a pairs the terms
    CHECK(std::abs(weyl_sum(g11, cs, {{1, 2}, {1}}, static_cast<double>(x)) - by_hand(1, 2, 1, x)) < 1e-9);
  }
}

TEST_CASE("mod p experiments") {
  auto o = oracle11();
  auto r2 = run_modp_experiment({{o.get(), lattice(2)}}, 2, 550);
  CHECK(r2.counts.size() == 4);
  CHECK(std::accumulate(r2.counts.begin(), r2.counts.end(), std::uint64_t{0}) == outcome_space_size(11, 550));
  CHECK(r2.total == outcome_space_size(11, 550));

  auto r3 = run_modp_experiment({{o.get(), lattice(3)}}, 3, 1100, 0.0, 1.0, 1);
  auto r3w = run_modp_experiment({{o.get(), lattice(3)}}, 3, 1100, 0.0, 1.0, 3);
  CHECK(r3.counts == r3w.counts);
  CHECK(r3.tv >= 0.0);
  CHECK(r3.tv <= 1.0);

  auto half = run_modp_experiment({{o.get(), lattice(3)}}, 3, 1100, 0.0, 0.5);
  CHECK(half.total * 2 == r3.total);

  CHECK_THROWS_AS(run_modp_experiment({{o.get(), lattice(3)}}, 4, 100), DomainError);
  CHECK_THROWS_AS(run_modp_experiment({{o.get(), lattice(3)}}, 2, 100), DomainError);

  auto cong = check_character_congruence({o.get(), lattice(5)}, DirichletCharacter(11, 5), 1100);
  CHECK(cong.violations == 0);
  CHECK(cong.checked == outcome_space_size(11, 1100));
  CHECK(cong.m != 0);
}

TEST_CASE("mod 1 experiments") {
  auto whole = run_mod1_experiment(*oracle11(), 550, 1);
  CHECK(whole.grid.total == outcome_space_size(11, 550));
  CHECK(whole.grid.counts.size() == 1);
  auto r = run_mod1_experiment(*oracle11(), 1100, 4);
  CHECK(r.grid.counts.size() == 64);
  CHECK(std::abs(r.lower_half_fraction - 0.5) < 0.02);
  CHECK(r.discrepancy_re > 0.0);
  CHECK(r.discrepancy_rational < 0.05);
}

TEST_CASE("cusp experiments") {
  auto g11 = GroupDescriptor::gamma0(11);
  auto one = run_cusp_experiment(g11, 300, 1);
  CHECK(one.boxes.total == count_double_cosets(g11, 300));
  auto quarters = run_cusp_experiment(g11, 1100, 4);
  CHECK(std::abs(static_cast<double>(quarters.boxes.counts[0]) / quarters.boxes.total - 0.25) < 0.02);
  auto quarters3 = run_cusp_experiment(g11, 1100, 4, 3);
  CHECK(quarters.boxes.counts == quarters3.boxes.counts);

  auto gi = GroupDescriptor::imag_quad_gamma0(-4);
  for (double x : {3.0, 8.0, 12.0}) {
    auto r = run_cusp_experiment(gi, x, 2);
    REQUIRE(r.has_quadrants);
    CHECK(r.quadrants[0] == r.quadrants[1]);
    CHECK(r.quadrants[1] == r.quadrants[2]);
    CHECK(r.quadrants[2] == r.quadrants[3]);
    CHECK(r.quadrants[0] * 4 + r.fixed_points == r.boxes.total);
  }
  CHECK_FALSE(run_cusp_experiment(g11, 100, 2).has_quadrants);
}

TEST_CASE("quadrant assignment is rotation equivariant") {
  CHECK(gaussian_quadrant({{0, 0}, 1}) == -1);
  CHECK(gaussian_quadrant({{1, 1}, 2}) == -1);
  CHECK(gaussian_quadrant({{1, 0}, 2}) == -1);
  for (std::int64_t den : {3, 4, 7, 10}) {
    for (std::int64_t x = 0; x < den; ++x)
      for (std::int64_t y = 0; y < den; ++y) {
        CuspPoint p{{x, y}, den};
        CuspPoint ip{{pos_mod(-y, den), x}, den};
        const int qp = gaussian_quadrant(p), qi = gaussian_quadrant(ip);
        if (qp < 0) {
          CHECK(qi < 0);
          continue;
        }
        CHECK(qi == (qp + 1) % 4);
      }
  }
}
