#include <doctest.h>

#include <cmath>

#include "horocorr/errors.hpp"
#include "horocorr/lorentz.hpp"

using namespace horocorr;

namespace {

MinkowskiVector mv(std::initializer_list<double> c) {
  Vec v(static_cast<Eigen::Index>(c.size()));
  Eigen::Index i = 0;
  for (double x : c) v(i++) = x;
  return MinkowskiVector(v);
}

}  // namespace

TEST_SUITE("lorentz") {
  TEST_CASE("inner product on basis vectors") {
    CHECK(mink_inner(mv({1, 0, 0, 0}), mv({1, 0, 0, 0})) == -1.0);
    CHECK(mink_inner(mv({1, 1, 0, 0}), mv({1, 1, 0, 0})) == 0.0);
    CHECK(mink_inner(mv({1, 0, 0, 0}), mv({0, 1, 0, 0})) == 0.0);
    CHECK_THROWS_AS(mink_inner(mv({1, 0, 0}), mv({1, 0, 0, 0})), DimensionError);
  }

  TEST_CASE("classification") {
    CHECK(classify(mv({1, 0, 0, 0}), 1e-12) == ModelClass::Hyperboloid);
    CHECK(classify(mv({0, 1, 0, 0}), 1e-12) == ModelClass::DeSitter);
    CHECK(classify(mv({2, 2, 0, 0}), 1e-12) == ModelClass::NullConePlus);
    CHECK(classify(mv({-1, 0, 0, 0}), 1e-12) == ModelClass::Other);
    CHECK(classify(mv({-2, 2, 0, 0}), 1e-12) == ModelClass::Other);
    CHECK(to_string(ModelClass::DeSitter) == "DeSitter");
  }

  TEST_CASE("Poincare ball map") {
    CHECK(to_poincare_ball(mv({1, 0, 0, 0})).norm() == 0.0);
    const auto b1 = to_poincare_ball(mv({std::cosh(1.0), std::sinh(1.0), 0, 0})).coords;
    CHECK(b1(0) == doctest::Approx(std::tanh(0.5)).epsilon(1e-14));
    const auto b2 = to_poincare_ball(mv({std::cosh(2.0), 0, std::sinh(2.0), 0})).coords;
    CHECK(b2(1) == doctest::Approx(std::tanh(1.0)).epsilon(1e-14));
    CHECK(b2(0) == 0.0);
    CHECK_THROWS_AS(to_poincare_ball(mv({0, 1, 0, 0})), MathDomainError);
  }

  TEST_CASE("hyperbolic distance") {
    const auto o = hyperboloid_origin(3);
    const auto p = mv({std::cosh(1.0), std::sinh(1.0), 0, 0});
    const auto q = mv({std::cosh(1.0), -std::sinh(1.0), 0, 0});
    CHECK(hyperbolic_distance(o, o) == 0.0);
    CHECK(hyperbolic_distance(o, p) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(hyperbolic_distance(p, q) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK_THROWS_AS(hyperbolic_distance(o, mv({1, 1, 0, 0})), MathDomainError);
  }

  TEST_CASE("distance agrees with the ball-model formula") {
    // Independent route: d = acosh(1 + 2|a-b|^2 / ((1-|a|^2)(1-|b|^2))).
    const double s = 0.7, r = 1.3;
    const auto p = mv({std::cosh(s), std::sinh(s) * 0.6, std::sinh(s) * 0.8, 0});
    const auto q = mv({std::cosh(r), 0, -std::sinh(r), 0});
    const Vec a = to_poincare_ball(p).coords, b = to_poincare_ball(q).coords;
    const double d = std::acosh(1 + 2 * (a - b).squaredNorm() / ((1 - a.squaredNorm()) * (1 - b.squaredNorm())));
    CHECK(hyperbolic_distance(p, q) == doctest::Approx(d).epsilon(1e-12));
  }
}
