#include <doctest.h>

#include <cmath>
#include <numbers>

#include "horocorr/catalog.hpp"
#include "horocorr/errors.hpp"
#include "horocorr/flow.hpp"
#include "horocorr/verification.hpp"

using namespace horocorr;

TEST_SUITE("catalog") {
  TEST_CASE("lookup") {
    CHECK(catalog_entry("constant").id == "constant:0");
    CHECK(catalog_entry("constant:0.5").id == "constant:0.5");
    CHECK(catalog_entry("height:2").metric.domain.kind == DomainSpec::Kind::FullSphere);
    CHECK(catalog_entry("cylindric", 3).metric.n() == 3);
    CHECK_THROWS_AS(catalog_entry("nope"), ConfigError);
    CHECK_THROWS_AS(catalog_entry("constant:abc"), ConfigError);
    CHECK_THROWS_AS(catalog_entry("constant", 1), ConfigError);
    const auto p = SpherePoint::north(2);
    CHECK_THROWS_AS(make_cylindric(p, SpherePoint::basis(3, 0)), ConfigError);
  }

  TEST_CASE("values of the catalog factors") {
    const auto north = SpherePoint::north(2);
    CHECK(catalog_entry("flat-punctured").metric.rho.value(north.antipode()) == doctest::Approx(std::log(0.5)));
    CHECK(std::abs(catalog_entry("cylindric").metric.rho.value(SpherePoint::basis(3, 0))) < 1e-15);
    // Flat factor equals ln((1 + |u|^2) / 2) in the chart from the puncture.
    const StereographicChart chart(north);
    const auto x = SpherePoint(Vec(Eigen::Vector3d(0.3, -0.4, 0.2)));
    const double u2 = chart.forward(x).squaredNorm();
    CHECK(catalog_entry("flat-punctured").metric.rho.value(x) == doctest::Approx(std::log((1 + u2) / 2)).epsilon(1e-13));
  }

  TEST_CASE("every declared expectation holds") {
    for (const auto& id : catalog_ids()) {
      const auto entry = catalog_entry(id);
      const auto grid = build_grid(entry.metric.domain, {48, 48}, entry.default_margin);
      const double t0 = min_flow_time(entry.metric, grid, 0.05);
      for (const auto& r : check_expectations(entry, grid, {t0 + 0.1, 1.0, 3.0})) {
        INFO(id << " " << r.name << " measured " << r.measured << " tolerance " << r.tolerance);
        CHECK(r.passed);
      }
    }
  }

  TEST_CASE("n = 3 expectations hold") {
    for (const auto& id : catalog_ids()) {
      const auto entry = catalog_entry(id, 3);
      const auto grid = build_grid(entry.metric.domain, {12, 12, 12}, entry.default_margin);
      const double t0 = min_flow_time(entry.metric, grid, 0.05);
      for (const auto& r : check_expectations(entry, grid, {t0 + 0.1, 1.0})) {
        INFO(id << " " << r.name << " measured " << r.measured);
        CHECK(r.passed);
      }
    }
  }

  TEST_CASE("constant c at time t matches c = 0 at time c + t") {
    const auto grid = build_grid(DomainSpec::full_sphere(2), {32, 32}, 0.0);
    const auto a = with_fd_curvatures(metric_to_hypersurface(make_constant(0.5).metric, 0.5, grid));
    const auto b = with_fd_curvatures(metric_to_hypersurface(make_constant(0.0).metric, 1.0, grid));
    CHECK(max_node_difference(a, b) < 1e-9);
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t k = 0; k < a.kappas[i].size(); ++k) CHECK(std::abs(a.kappas[i][k] - b.kappas[i][k]) < 1e-9);
  }

  TEST_CASE("cylindric surfaces are invariant under rotations about the axis") {
    const auto e = catalog_entry("cylindric");
    const auto grid = build_grid(e.metric.domain, {32, 16}, e.default_margin);
    const auto mesh = metric_to_hypersurface(e.metric, 3.0, grid);
    // Rotating by one longitude step maps the vertex set onto itself.
    const double step = 2.0 * std::numbers::pi / 32.0;
    const Eigen::Matrix3d rot = Eigen::AngleAxisd(step, Eigen::Vector3d::UnitZ()).toRotationMatrix();
    double worst = 0.0;
    for (std::size_t i = 0; i < mesh.size(); ++i) {
      const Eigen::Vector3d moved = rot * Eigen::Vector3d(mesh.phi[i].space());
      double nearest = INFINITY;
      for (std::size_t j = 0; j < mesh.size(); ++j)
        nearest = std::min(nearest, (moved - Eigen::Vector3d(mesh.phi[j].space())).norm());
      worst = std::max(worst, nearest);
    }
    CHECK(worst < 1e-9);
  }

  TEST_CASE("fixture parameters are validated") {
    CHECK_THROWS_AS(make_selfintersecting_fixture(true, 10), ConfigError);
    CHECK_THROWS_AS(make_selfintersecting_fixture(true, 66), ConfigError);
  }
}
