#include <doctest.h>

#include <cmath>

#include "horocorr/catalog.hpp"
#include "horocorr/errors.hpp"
#include "horocorr/flow.hpp"
#include "horocorr/parallel.hpp"

using namespace horocorr;

namespace {

double coth(double x) { return std::cosh(x) / std::sinh(x); }

}  // namespace

TEST_SUITE("flow") {
  TEST_CASE("Riccati curvature law") {
    for (double t : {0.3, 1.0, 4.0}) {
      CHECK(riccati_curvature(1.0, t) == doctest::Approx(1.0).epsilon(1e-15));
      CHECK(riccati_curvature(-1.0, t) == doctest::Approx(-1.0).epsilon(1e-15));
    }
    CHECK(riccati_curvature(0.0, 1.0) == doctest::Approx(0.761594).epsilon(1e-6));
    CHECK(riccati_curvature(coth(1.0), 1.0) == doctest::Approx(coth(2.0)).epsilon(1e-14));
    // kappa^t - 1 = (kappa - 1)(1 - tanh t) / (1 + kappa tanh t): at t = 10 this is
    // about 8e-9 for kappa = 0 but 7.8e-8 for kappa = -0.9, which needs t = 12.
    for (double k : {0.0, 5.0}) CHECK(std::abs(riccati_curvature(k, 10.0) - 1.0) < 1e-8);
    CHECK(std::abs(riccati_curvature(-0.9, 12.0) - 1.0) < 1e-8);
    for (double k : {-0.9, 0.0, 5.0}) {
      const double th = std::tanh(10.0);
      CHECK(riccati_curvature(k, 10.0) - 1.0 ==
            doctest::Approx((k - 1.0) * (1.0 - th) / (1.0 + k * th)).epsilon(1e-6));
    }
    // kappa = -coth(1) reaches a focal point after unit time.
    CHECK_THROWS_AS(riccati_curvature(-coth(1.0), 1.0), MathDomainError);
  }

  TEST_CASE("zero flow is the identity") {
    const auto e = catalog_entry("cylindric");
    const auto mesh = metric_to_hypersurface(e.metric, 0.5, build_grid(e.metric.domain, {24, 24}, e.default_margin));
    const auto r = normal_flow(mesh, 0.0);
    CHECK(max_node_difference(mesh, r.mesh) == 0.0);
  }

  TEST_CASE("flowing equals building at the later time") {
    const auto e = catalog_entry("flat-punctured");
    const auto grid = build_grid(e.metric.domain, {32, 32}, e.default_margin);
    const auto flowed = normal_flow(metric_to_hypersurface(e.metric, 0.2, grid), 0.9).mesh;
    const auto direct = metric_to_hypersurface(e.metric, 1.1, grid);
    CHECK(max_node_difference(flowed, direct) < 1e-9);
    for (std::size_t i = 0; i < grid.node_count(); ++i) {
      CHECK(flowed.support[i] == doctest::Approx(direct.support[i]).epsilon(1e-12));
      CHECK(flowed.gauss[i].coords() == grid.nodes[i].coords());
    }
    CHECK(model_invariant_violation(flowed) < 1e-9);
  }

  TEST_CASE("flow invariance report") {
    const auto round = make_constant(0.0);
    const auto base = with_fd_curvatures(
        metric_to_hypersurface(round.metric, 1.0, build_grid(round.metric.domain, {64, 64}, 0.0)));
    const auto flowed = normal_flow(base, 1.0, true);
    const auto report = flow_invariance_check(base, flowed);
    CHECK(report.pass());
    REQUIRE(report.kappa_max_discrepancy.has_value());
    CHECK(*report.kappa_max_discrepancy < 1e-3);
    for (const auto& k : flowed.fd_kappas)
      for (double x : k) CHECK(std::abs(x - coth(2.0)) < 1e-3);

    const auto cyl = catalog_entry("cylindric");
    const auto cbase = metric_to_hypersurface(cyl.metric, 1.0, build_grid(cyl.metric.domain, {32, 32}, cyl.default_margin));
    const auto cr = flow_invariance_check(cbase, normal_flow(cbase, 1.0));
    CHECK(cr.edge_scale_max_rel_error < 1e-9);
    CHECK(cr.gauss_max_deviation < 1e-12);
  }

  TEST_CASE("embeddedness of surfaces") {
    const auto round = make_constant(0.0);
    const auto sphere = metric_to_hypersurface(round.metric, 1.0, build_grid(round.metric.domain, {32, 32}, 0.0));
    CHECK(embeddedness_check(sphere).embedded);
    const auto flat = catalog_entry("flat-punctured");
    const auto fgrid = build_grid(flat.metric.domain, {32, 32});
    const auto r = find_embedding_time(flat.metric, fgrid, {0.0, 1.0, 2.0});
    REQUIRE(r.first_embedded_t.has_value());
    CHECK(*r.first_embedded_t == 0.0);
    CHECK(r.monotone);
    const auto cyl = catalog_entry("cylindric");
    const auto cr = find_embedding_time(cyl.metric, build_grid(cyl.metric.domain, {64, 32}, cyl.default_margin), {1.0, 2.0, 3.0});
    CHECK(cr.first_embedded_t.has_value());
    CHECK(cr.monotone);
    CHECK_THROWS_AS(find_embedding_time(flat.metric, fgrid, {}), ConfigError);
    CHECK_THROWS_AS(find_embedding_time(flat.metric, fgrid, {1.0, 0.5}), ConfigError);
  }

  TEST_CASE("OBJ-ready ball meshes stay inside the unit ball") {
    const auto cyl = catalog_entry("cylindric");
    const auto ball = to_ball_mesh(metric_to_hypersurface(cyl.metric, 3.0, build_grid(cyl.metric.domain, {32, 16}, cyl.default_margin)));
    for (const auto& v : ball.vertices) CHECK(v.norm() < 1.0);
    const auto e3 = catalog_entry("constant:0", 3);
    CHECK_THROWS_AS(to_ball_mesh(metric_to_hypersurface(e3.metric, 1.0, build_grid(e3.metric.domain, {6, 6, 6}, 0.0))),
                    DimensionError);
  }
}

TEST_SUITE("intersect") {
  TEST_CASE("triangle pairs") {
    using V = Eigen::Vector3d;
    const std::array<V, 3> flat{V(-1, -1, 0), V(1, -1, 0), V(0, 1, 0)};
    const std::array<V, 3> crossing{V(0, 0, -1), V(0.1, 0, 1), V(-0.1, 0.1, 1)};
    const std::array<V, 3> above{V(0, 0, 1), V(1, 0, 2), V(0, 1, 2)};
    const std::array<V, 3> coplanar{V(-0.5, -0.5, 0), V(0.5, -0.5, 0), V(0, 0.5, 0)};
    CHECK(triangle_intersection(flat, crossing).has_value());
    CHECK_FALSE(triangle_intersection(flat, above).has_value());
    CHECK_FALSE(triangle_intersection(flat, coplanar).has_value());
    const auto p = triangle_intersection(flat, crossing);
    REQUIRE(p.has_value());
    CHECK(std::abs(p->z()) < 1e-12);
  }

  TEST_CASE("figure-eight fixture") {
    const auto fixture = make_selfintersecting_fixture(true);
    const auto v = find_self_intersection(fixture.mesh);
    CHECK_FALSE(v.embedded);
    REQUIRE(v.witness.has_value());
    CHECK((*v.witness)[0] < (*v.witness)[1]);
    CHECK(fixture.distance_to_crossing(v.intersection_point) < 1e-6);
    CHECK(find_self_intersection(make_selfintersecting_fixture(false).mesh).embedded);
  }

  TEST_CASE("verdicts do not depend on the thread count") {
    const auto fixture = make_selfintersecting_fixture(true, 128);
    const int saved = thread_count();
    set_thread_count(1);
    const auto one = find_self_intersection(fixture.mesh);
    set_thread_count(7);
    const auto many = find_self_intersection(fixture.mesh);
    set_thread_count(saved);
    CHECK(one.witness == many.witness);
    CHECK(one.intersection_point == many.intersection_point);
    CHECK(one.candidate_pairs_tested == many.candidate_pairs_tested);
  }

  TEST_CASE("degenerate triangles are skipped and counted") {
    BallMesh mesh;
    mesh.vertices = {{0, 0, 0}, {1, 0, 0}, {0, 1, 0}, {2, 2, 2}, {2, 2, 2}, {3, 3, 3}};
    mesh.triangles = {{0, 1, 2}, {3, 4, 5}};
    const auto v = find_self_intersection(mesh);
    CHECK(v.embedded);
    CHECK(v.degenerate_triangles == 1);
  }
}
