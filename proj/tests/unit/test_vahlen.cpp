#include "doctest.h"
#include "support.hpp"

#include "hypsym/vahlen.hpp"

#include <cmath>
#include <complex>
#include <numbers>

using namespace hypsym;
using E = CliffordElement<double>;
using V = VahlenMatrix<double>;
using VR = VahlenMatrix<Rational>;
using cd = std::complex<double>;

namespace {

V real_matrix(double a, double b, double c, double d) {
  return {E::scalar(0, a), E::scalar(0, b), E::scalar(0, c), E::scalar(0, d)};
}

UpperHalfPoint point(std::vector<double> x, double y) { return UpperHalfPoint::from_coords(x, y); }

// Quaternions z + w j with j z = conj(z) j, as an oracle for SL_2(C) on H^3.
struct Quat {
  cd z, w;
};
Quat qmul(Quat p, Quat q) { return {p.z * q.z - p.w * std::conj(q.w), p.z * q.w + p.w * std::conj(q.z)}; }
Quat qinv(Quat q) {
  const double n = std::norm(q.z) + std::norm(q.w);
  return {std::conj(q.z) / n, -q.w / n};
}
Quat qadd(Quat p, Quat q) { return {p.z + q.z, p.w + q.w}; }

cd as_complex(const E& x) { return {x[0], x[1]}; }

}  // namespace

TEST_CASE("membership") {
  CHECK(check_membership(V::identity(2)).ok);
  CHECK(check_membership(real_matrix(2, 1, 1, 1)).ok);
  auto bad = check_membership(real_matrix(1, 0, 0, 2));
  CHECK_FALSE(bad.ok);
  CHECK(bad.failed == MembershipCondition::Determinant);

  // e_12 paired with a scalar breaks condition (ii): bar(a) b = -e_12 is not a vector
  V g{E::basis(2, 0b11), E::scalar(2, 1), E(2), E::basis(2, 0b11, -1)};
  auto r = check_membership(g);
  CHECK_FALSE(r.ok);
  CHECK(r.failed == MembershipCondition::VectorProducts);

  V mixed{E::scalar(1, 1), E(2), E(1), E::scalar(1, 1)};
  CHECK(check_membership(mixed).failed == MembershipCondition::Dimension);
}

TEST_CASE("inverse matrix") {
  CHECK(invert_matrix(V::identity(1)) == V::identity(1));
  CHECK(invert_matrix(real_matrix(1, 1, 0, 1)) == real_matrix(1, -1, 0, 1));
  CHECK(invert_matrix(real_matrix(0, 1, -1, 0)) == real_matrix(0, -1, 1, 0));
  CHECK_THROWS_AS(invert_matrix(real_matrix(1, 0, 0, 2)), MembershipFailure);

  // exact products of integral generators
  using R = CliffordElement<Rational>;
  testing::Rng rng(5);
  for (int m = 0; m <= 3; ++m)
    for (int k = 0; k < 30; ++k) {
      auto g = VR::identity(m);
      for (int j = 0; j < 6; ++j) {
        switch (testing::uniform_int(rng, 0, 2)) {
          case 0:
            g = g * VR{R::scalar(m, Rational(1)), testing::random_vector<Rational>(rng, m, 3), R(m),
                       R::scalar(m, Rational(1))};
            break;
          case 1:
            g = g * VR{R(m), R::scalar(m, Rational(-1)), R::scalar(m, Rational(1)), R(m)};
            break;
          default: {
            const Mask e = m == 0 ? 0 : Mask{1} << testing::uniform_int(rng, 0, m - 1);
            R v = R::basis(m, e, Rational(1));
            g = g * VR{v, R(m), R(m), v.bar().star()};
          }
        }
      }
      REQUIRE(check_membership(g).ok);
      CHECK(invert_matrix(g) * g == VR::identity(m));
      CHECK(g * invert_matrix(g) == VR::identity(m));
    }
}

TEST_CASE("action on points") {
  auto p = point({0.3, -0.2}, 0.7);
  auto q = act_on_point(V::identity(1), p);
  CHECK(q.x == p.x);
  CHECK(q.y == p.y);

  auto j = act_on_point(real_matrix(0, 1, -1, 0), point({0.0}, 1.0));
  CHECK(j.x[0] == doctest::Approx(0.0));
  CHECK(j.y == doctest::Approx(1.0));

  auto t = act_on_point(real_matrix(1, 1, 0, 1), point({0.0}, 1.0));
  CHECK(t.x[0] == doctest::Approx(1.0));
  CHECK(t.y == doctest::Approx(1.0));
}

TEST_CASE("action on the boundary") {
  V par{E::scalar(1, 1), E::vector(1, std::vector<double>{2.0, 3.0}), E(1), E::scalar(1, 1)};
  CHECK_FALSE(act_on_boundary(par, std::nullopt).has_value());

  auto r = act_on_boundary(real_matrix(3, 1, 11, 4), std::nullopt);
  REQUIRE(r.has_value());
  CHECK((*r)[0] == doctest::Approx(3.0 / 11));

  CHECK_FALSE(act_on_boundary(real_matrix(0, 1, -1, 0), E(0)).has_value());
  auto fin = act_on_boundary(real_matrix(2, 1, 1, 1), E::scalar(0, 1.0));
  REQUIRE(fin.has_value());
  CHECK((*fin)[0] == doctest::Approx(1.5));
}

TEST_CASE("hyperbolic distance") {
  auto p = point({0.0}, 1.0);
  CHECK(hyperbolic_distance(p, p) == doctest::Approx(0.0));
  CHECK(hyperbolic_distance(p, point({0.0}, std::numbers::e)) == doctest::Approx(1.0));
  testing::Rng rng(2);
  for (int k = 0; k < 50; ++k) {
    auto a = testing::random_point(rng, 2), b = testing::random_point(rng, 2);
    CHECK(hyperbolic_distance(a, b) == doctest::Approx(hyperbolic_distance(b, a)).epsilon(1e-14));
  }
}

TEST_CASE("homomorphism and isometry") {
  testing::Rng rng(17);
  for (int m = 0; m <= 3; ++m) {
    for (int k = 0; k < 200; ++k) {
      V g1 = testing::random_vahlen(rng, m), g2 = testing::random_vahlen(rng, m);
      REQUIRE(check_membership(g1).ok);
      auto p = testing::random_point(rng, m), q = testing::random_point(rng, m);
      auto lhs = act_on_point(g1 * g2, p);
      auto rhs = act_on_point(g1, act_on_point(g2, p));
      CHECK(hyperbolic_distance(lhs, rhs) < 1e-9);
      const double d0 = hyperbolic_distance(p, q);
      const double d1 = hyperbolic_distance(act_on_point(g1, p), act_on_point(g1, q));
      CHECK(std::abs(d0 - d1) < 1e-9 * std::max(1.0, d0));
    }
  }
}

TEST_CASE("height formula standalone") {
  testing::Rng rng(23);
  for (int m = 0; m <= 2; ++m)
    for (int k = 0; k < 50; ++k) {
      V g = testing::random_vahlen(rng, m);
      auto p = testing::random_point(rng, m);
      const E cxd = g.c * p.x + g.d;
      const double expected = p.y / (cxd.norm_squared() + g.c.norm_squared() * p.y * p.y);
      CHECK(act_on_point(g, p).y == doctest::Approx(expected).epsilon(1e-12));
      CHECK(height_after_action(g, p) == doctest::Approx(expected).epsilon(1e-12));
    }
}

TEST_CASE("classical specializations") {
  testing::Rng rng(29);
  // n - 1 = 0: Moebius transformations of the upper half-plane
  for (int k = 0; k < 100; ++k) {
    V g = testing::random_vahlen(rng, 0);
    auto p = testing::random_point(rng, 0);
    const cd z(p.x[0], p.y);
    const cd w = (g.a[0] * z + g.b[0]) / (g.c[0] * z + g.d[0]);
    auto q = act_on_point(g, p);
    CHECK(q.x[0] == doctest::Approx(w.real()).epsilon(1e-10));
    CHECK(q.y == doctest::Approx(w.imag()).epsilon(1e-10));
  }
  // n - 1 = 1: SL_2(C) on H^3 through quaternions
  for (int k = 0; k < 100; ++k) {
    V g = testing::random_vahlen(rng, 1);
    auto p = testing::random_point(rng, 1);
    const Quat P{as_complex(p.x), cd(p.y, 0)};
    auto embed = [](const E& x) { return Quat{as_complex(x), 0.0}; };
    const Quat num = qadd(qmul(embed(g.a), P), embed(g.b));
    const Quat den = qadd(qmul(embed(g.c), P), embed(g.d));
    const Quat img = qmul(num, qinv(den));
    auto q = act_on_point(g, p);
    CHECK(std::abs(as_complex(q.x) - img.z) < 1e-10);
    CHECK(img.w.imag() == doctest::Approx(0.0).epsilon(1e-10));
    CHECK(q.y == doctest::Approx(img.w.real()).epsilon(1e-10));
  }
}
