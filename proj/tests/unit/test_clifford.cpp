#include "doctest.h"
#include "support.hpp"

#include "hypsym/clifford.hpp"

#include <cmath>

using namespace hypsym;
using E = CliffordElement<double>;
using R = CliffordElement<Rational>;
using I = CliffordElement<std::int64_t>;

namespace {
E e(int dim, Mask m, double v = 1.0) { return E::basis(dim, m, v); }
E one(int dim) { return E::scalar(dim, 1.0); }
}  // namespace

TEST_CASE("basis products") {
  CHECK(e(2, 0b01) * e(2, 0b10) == e(2, 0b11));
  CHECK(e(2, 0b10) * e(2, 0b01) == e(2, 0b11, -1.0));
  CHECK(e(1, 0b1) * e(1, 0b1) == E::scalar(1, -1.0));
  CHECK((one(1) + e(1, 1)) * (one(1) - e(1, 1)) == E::scalar(1, 2.0));
  // e_12^2 = -1
  CHECK(e(2, 0b11) * e(2, 0b11) == E::scalar(2, -1.0));
}

TEST_CASE("mixed dimensions are rejected") {
  CHECK_THROWS_AS(one(1) * one(2), DimensionMismatch);
  CHECK_THROWS_AS(one(1) + one(2), DimensionMismatch);
  CHECK_THROWS_AS(E::basis(1, 0b10), DimensionMismatch);
}

TEST_CASE("involutions") {
  CHECK(e(1, 1).bar() == e(1, 1, -1.0));
  CHECK(e(1, 1).star() == e(1, 1));
  CHECK(e(2, 0b11).bar() == e(2, 0b11, -1.0));
  CHECK(e(2, 0b11).star() == e(2, 0b11, -1.0));
  CHECK(one(3).bar() == one(3));
  CHECK(one(3).star() == one(3));
  CHECK(e(3, 0b111).bar() == e(3, 0b111));
}

TEST_CASE("norm") {
  CHECK(norm(one(1) + e(1, 1)) == doctest::Approx(std::sqrt(2.0)));
  CHECK(norm(E(3)) == 0.0);
  CHECK(norm(e(2, 0b11)) == 1.0);
}

TEST_CASE("inner product on V_n") {
  CHECK(inner_product(e(1, 1), e(1, 1)) == 1.0);
  CHECK(inner_product(one(1), e(1, 1)) == 0.0);
  CHECK(inner_product(2.0 * one(1) + 3.0 * e(1, 1), one(1) + e(1, 1)) == 5.0);
  CHECK_THROWS_AS(inner_product(e(2, 0b11), one(2)), NotInVectorSpace);

  testing::Rng rng(7);
  for (int n = 1; n <= 5; ++n)
    for (int k = 0; k < 50; ++k) {
      auto v = testing::random_vector<std::int64_t>(rng, n, 9);
      auto w = testing::random_vector<std::int64_t>(rng, n, 9);
      std::int64_t dot = 0;
      auto cv = v.vector_coords(), cw = w.vector_coords();
      for (std::size_t i = 0; i < cv.size(); ++i) dot += cv[i] * cw[i];
      CHECK(inner_product(v, w) == dot);
    }
}

TEST_CASE("inverse in the Clifford group") {
  CHECK(invert_clifford_group(e(1, 1)) == e(1, 1, -1.0));
  CHECK(invert_clifford_group(one(1) + e(1, 1)) == 0.5 * (one(1) - e(1, 1)));
  CHECK(invert_clifford_group(one(2) + e(2, 0b11)) == 0.5 * (one(2) - e(2, 0b11)));
  // 1 + e_123 squares to a non-scalar times itself: x bar(x) = 2 + 2 e_123
  CHECK_THROWS_AS(invert_clifford_group(one(3) + e(3, 0b111)), NotInCliffordGroup);
  CHECK_THROWS_AS(invert_clifford_group(E(2)), NotInCliffordGroup);

  // exact backend: products of vectors invert exactly
  testing::Rng rng(11);
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k < 20; ++k) {
      R x = testing::random_vector<Rational>(rng, n, 5) * testing::random_vector<Rational>(rng, n, 5);
      if (x.is_zero()) continue;
      R inv = invert_clifford_group(x);
      CHECK(x * inv == R::scalar(n, Rational(1)));
    }
}

TEST_CASE("algebra laws on integer elements") {
  testing::Rng rng(1);
  for (int n = 1; n <= 5; ++n) {
    for (int k = 0; k < 200; ++k) {
      I x = testing::random_element<std::int64_t>(rng, n, 5);
      I y = testing::random_element<std::int64_t>(rng, n, 5);
      I z = testing::random_element<std::int64_t>(rng, n, 5);
      CHECK((x * y) * z == x * (y * z));
      CHECK((x * y).bar() == y.bar() * x.bar());
      CHECK((x * y).star() == y.star() * x.star());
      CHECK(x.bar().bar() == x);
      CHECK(x.star().star() == x);
      CHECK(x.bar() == x.star().grade_involution());
    }
  }
}

TEST_CASE("vector norms and multiplicativity") {
  testing::Rng rng(3);
  for (int n = 1; n <= 5; ++n)
    for (int k = 0; k < 100; ++k) {
      I v = testing::random_vector<std::int64_t>(rng, n, 9);
      CHECK(v * v.bar() == I::scalar(n, v.norm_squared()));
      I w = testing::random_vector<std::int64_t>(rng, n, 9);
      I u = testing::random_vector<std::int64_t>(rng, n, 9);
      I x = v * w, y = w * u * v;
      CHECK((x * y).norm_squared() == x.norm_squared() * y.norm_squared());
    }
}

TEST_CASE("printing") {
  CHECK(to_string(one(2) + e(2, 0b11, -2.0)).find("e12") != std::string::npos);
}

TEST_CASE("rational products match term-by-term arithmetic") {
  testing::Rng rng(31);
  auto naive = [](const R& x, const R& y) {
    R out(x.dim());
    std::vector<Rational> acc(x.size(), Rational(0));
    for (Mask m = 0; m < x.size(); ++m)
      for (Mask n = 0; n < y.size(); ++n) acc[m ^ n] += Rational(basis_product_sign(m, n)) * x[m] * y[n];
    for (Mask m = 0; m < x.size(); ++m) out += R::basis(x.dim(), m, acc[m]);
    return out;
  };
  for (int n = 1; n <= 4; ++n)
    for (int k = 0; k < 100; ++k) {
      const R x = testing::random_rational_element(rng, n), y = testing::random_rational_element(rng, n);
      CHECK(x * y == naive(x, y));
    }
  // denominators whose common multiple leaves 64 bits take the generic path
  R big(2), other(2);
  big[0] = Rational(1, 1LL << 40);
  big[3] = Rational(1, 3486784401LL);  // 3^20
  other[1] = Rational(5, 7);
  other[2] = Rational(-2, 1LL << 40);
  CHECK(big * other == naive(big, other));
}
