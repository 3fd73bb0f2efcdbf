#include "doctest.h"

#include "hypsym/errors.hpp"
#include "hypsym/statistics.hpp"

using namespace hypsym;

TEST_CASE("total variation and chi-square") {
  auto u = uniformity({5, 5, 5, 5});
  CHECK(u.total == 20);
  CHECK(u.tv == 0.0);
  CHECK(u.chi2 == 0.0);
  for (std::size_t k : {2u, 5u, 9u}) {
    std::vector<std::uint64_t> counts(k, 0);
    counts[1] = 7;
    CHECK(uniformity(counts).tv == doctest::Approx(1.0 - 1.0 / k));
  }
  auto t = uniformity({3, 1});
  CHECK(t.tv == doctest::Approx(0.25));
  CHECK(t.chi2 == doctest::Approx(1.0));
  auto m = uniformity({3, 1}, {0.75, 0.25});
  CHECK(m.tv == doctest::Approx(0.0));
  CHECK_THROWS_AS(uniformity({}), EmptySample);
  CHECK_THROWS_AS(uniformity({0, 0}), EmptySample);
  CHECK_THROWS_AS(uniformity({1, 2}, {1.0}), DimensionMismatch);
}

TEST_CASE("star discrepancy") {
  CHECK(star_discrepancy({0.5}) == doctest::Approx(0.5));
  CHECK(star_discrepancy({0.125, 0.375, 0.625, 0.875}) == doctest::Approx(0.125));
  CHECK(star_discrepancy({0.0, 0.0, 0.0}) == doctest::Approx(1.0));
  CHECK(star_discrepancy({0.875, 0.125, 0.625, 0.375}) == doctest::Approx(0.125));
  CHECK_THROWS_AS(star_discrepancy({}), EmptySample);
}
