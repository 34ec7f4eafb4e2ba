#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "horocorr/catalog.hpp"
#include "horocorr/conformal.hpp"
#include "horocorr/errors.hpp"

using namespace horocorr;

namespace {

SpherePoint random_point(std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  return SpherePoint(Vec(Vec::NullaryExpr(3, [&] { return normal(rng); })));
}

double max_abs(const std::vector<double>& v, double target) {
  double worst = 0.0;
  for (double x : v) worst = std::max(worst, std::abs(x - target));
  return worst;
}

}  // namespace

TEST_SUITE("conformal") {
  TEST_CASE("constant factors: P is half the round metric") {
    std::mt19937_64 rng(3);
    for (double c : {0.0, 0.5, -1.2}) {
      const auto entry = make_constant(c);
      const auto x = random_point(rng);
      const auto s = p_tensor(entry.metric, x);
      CHECK((s.matrix - 0.5 * Mat::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-14);
      CHECK(max_abs(s.round_eigenvalues, 0.5) < 1e-14);
      // Relative to e^{2c} g the eigenvalues are e^{-2c}/2.
      CHECK(max_abs(s.lambdas, 0.5 * std::exp(-2.0 * c)) < 1e-14);
    }
  }

  TEST_CASE("flat punctured metric has P = 0, analytically and by finite differences") {
    const auto entry = catalog_entry("flat-punctured");
    const auto fd = ConformalMetric{entry.metric.domain, entry.metric.rho.finite_difference(), "fd"};
    std::mt19937_64 rng(5);
    int checked = 0;
    while (checked < 20) {
      const auto x = random_point(rng);
      if (entry.metric.domain.boundary_distance(x) < 0.3) continue;
      CHECK(p_tensor(entry.metric, x).matrix.cwiseAbs().maxCoeff() < 1e-9);
      CHECK(p_tensor(fd, x).matrix.cwiseAbs().maxCoeff() < 1e-3);
      ++checked;
    }
  }

  TEST_CASE("cylindric metric: lambdas are -1/2 and 1/2, symmetric about the equator") {
    const auto entry = catalog_entry("cylindric");
    const auto north = SpherePoint::north(2);
    const auto pts = meridian_points(north, SpherePoint::basis(3, 0), {1.0, std::numbers::pi - 1.0, 0.3});
    const auto a = p_tensor(entry.metric, pts[0]).lambdas;
    const auto b = p_tensor(entry.metric, pts[1]).lambdas;
    CHECK(std::abs(a[0] - b[0]) < 1e-9);
    CHECK(std::abs(a[1] - b[1]) < 1e-9);
    const auto c = p_tensor(entry.metric, pts[2]).lambdas;
    CHECK(c[0] == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(c[1] == doctest::Approx(0.5).epsilon(1e-12));
    // Girth of every latitude circle under e^{2 rho} g is 2 pi: e^rho sin(theta) = 1.
    for (double theta : {0.1, 0.8, 1.5707963, 2.9})
      CHECK(std::exp(entry.metric.rho.value(meridian_points(north, SpherePoint::basis(3, 0), {theta})[0])) *
                std::sin(theta) ==
            doctest::Approx(1.0).epsilon(1e-14));
  }

  TEST_CASE("rescaled eigenvalues") {
    const auto entry = make_constant(0.0);
    const auto x = SpherePoint::basis(3, 0);
    CHECK(p_eigenvalues_rescaled(entry.metric, x, 0.0) == p_tensor(entry.metric, x).lambdas);
    CHECK(max_abs(p_eigenvalues_rescaled(entry.metric, x, 1.0), 0.5 * std::exp(-2.0)) < 1e-15);
    const auto flat = catalog_entry("flat-punctured");
    CHECK(max_abs(p_eigenvalues_rescaled(flat.metric, x, 2.0), 0.0) < 1e-9);
  }

  TEST_CASE("beta") {
    const auto x = SpherePoint::basis(3, 1);
    CHECK(beta(make_constant(0.0).metric, x) == doctest::Approx(1.0));
    CHECK(beta(make_constant(0.7).metric, x) == doctest::Approx(std::exp(1.4)));
    const auto flat = catalog_entry("flat-punctured");
    const auto pts = meridian_points(SpherePoint::north(2), x, {1.0, 0.5, 0.25, 0.125, 0.0625});
    for (std::size_t i = 1; i < pts.size(); ++i) CHECK(beta(flat.metric, pts[i]) > beta(flat.metric, pts[i - 1]));
  }

  TEST_CASE("realizability scan") {
    const auto grid = build_grid(DomainSpec::full_sphere(2), {16, 16}, 0.0);
    const auto zero = realizability_scan(make_constant(0.0).metric, grid, 1.0);
    CHECK(zero.within_bound);
    CHECK(zero.min_lambda == doctest::Approx(0.5));
    CHECK(zero.max_lambda == doctest::Approx(0.5));
    const auto edge = realizability_scan(make_constant(0.0).metric, grid, 0.5);
    CHECK(edge.within_bound);
    CHECK(edge.at_bound);
    const auto flat = catalog_entry("flat-punctured");
    CHECK(realizability_scan(flat.metric, build_grid(flat.metric.domain, {16, 16}), 0.01).within_bound);
    const auto steep = realizability_scan(make_height(5.0, SpherePoint::north(2)).metric, grid, 0.5);
    CHECK_FALSE(steep.within_bound);
    REQUIRE(steep.witness_node.has_value());
    CHECK(steep.witness_point.has_value());
  }

  TEST_CASE("boundary divergence scans") {
    const auto north = SpherePoint::north(2);
    const auto toward = SpherePoint::basis(3, 0);
    std::vector<double> angles;
    for (int k = 1; k <= 20; ++k) angles.push_back(std::ldexp(1.0, -k));
    const auto flat = catalog_entry("flat-punctured");
    const auto s = boundary_divergence_scan(flat.metric, north, meridian_points(north, toward, angles));
    CHECK(s.verdict == DivergenceScan::Verdict::Diverging);
    CHECK(s.betas.back() > 1e6);
    const auto cyl = catalog_entry("cylindric");
    for (const auto& p : {north, north.antipode()})
      CHECK(boundary_divergence_scan(cyl.metric, p, meridian_points(p, toward, angles)).verdict ==
            DivergenceScan::Verdict::Diverging);
    const auto round = boundary_divergence_scan(make_constant(0.0).metric, north, meridian_points(north, toward, angles));
    CHECK(round.verdict == DivergenceScan::Verdict::Inconclusive);
    CHECK(round.note == "domain has no boundary");
  }

  TEST_CASE("completeness probes") {
    const auto north = SpherePoint::north(2);
    const auto toward = SpherePoint::basis(3, 0);
    std::vector<double> quarter;
    for (int i = 0; i < 100; ++i) quarter.push_back(std::numbers::pi / 2 * i / 99.0);
    CHECK(completeness_probe(make_constant(0.0).metric, meridian_points(north, toward, quarter)).back() ==
          doctest::Approx(std::numbers::pi / 2).epsilon(1e-3));
    const auto flat = catalog_entry("flat-punctured");
    const auto curve = meridian_points(north, toward, shrinking_angles(1.0, 1e-5, 0.05, 0.1, 0.8));
    CHECK(completeness_probe(flat.metric, curve).back() > 1e3);
    const auto cyl = catalog_entry("cylindric");
    const auto curve2 = meridian_points(north, toward, shrinking_angles(std::numbers::pi / 2, 1e-3, 0.05, 0.1, 0.8));
    CHECK(completeness_probe(cyl.metric, curve2).back() > 5.0);
    std::vector<double> coarse{1.0, 0.5};
    CHECK_THROWS_AS(completeness_probe(flat.metric, meridian_points(north, toward, coarse)), ConfigError);
  }

  TEST_CASE("gradient-bound constants") {
    for (int n : {2, 3, 5}) {
      const auto k = gradient_bound_constants(1.0, 1.0, n);
      CHECK(k.K == doctest::Approx(std::max(1.0, std::sqrt(n) / 2.0)));
      CHECK(k.C0 * k.C * std::exp(2 * k.K * k.delta * k.Ybar) + 1.0 <= k.A);
      // Minimality up to the bisection width: A a little smaller fails.
      const auto smaller = constants_for(1.0, 1.0, n, k.A * (1 - 1e-5));
      CHECK(smaller.C0 * smaller.C * std::exp(2 * smaller.K * smaller.delta * smaller.Ybar) + 1.0 > smaller.A);
    }
    const auto tiny = gradient_bound_constants(1e-6, 1.0, 2);
    CHECK(tiny.delta == doctest::Approx(std::numbers::pi / 4 / std::sqrt(tiny.A)).epsilon(1e-5));
  }

  TEST_CASE("comparison ODE") {
    CHECK(ode_comparison_solution(3.0, 0.7, 0.0) == doctest::Approx(0.7));
    CHECK(ode_comparison_solution(1.0, 0.0, std::numbers::pi / 4) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(ode_blow_up_time(1.0, 0.0) == doctest::Approx(std::numbers::pi / 2));
  }
}
