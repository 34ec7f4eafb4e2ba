#include <doctest.h>

#include <cmath>

#include "horocorr/catalog.hpp"
#include "horocorr/correspondence.hpp"
#include "horocorr/errors.hpp"

using namespace horocorr;

namespace {

double coth(double x) { return std::cosh(x) / std::sinh(x); }

ParameterGrid sphere_grid(int r = 32) { return build_grid(DomainSpec::full_sphere(2), {r, r}, 0.0); }

}  // namespace

TEST_SUITE("correspondence") {
  TEST_CASE("constant factor gives the geodesic sphere of radius t") {
    const auto grid = sphere_grid();
    const auto mesh = metric_to_hypersurface(make_constant(0.0).metric, 1.0, grid);
    for (std::size_t i = 0; i < mesh.size(); ++i) {
      CHECK(mesh.phi[i].time() == doctest::Approx(std::cosh(1.0)).epsilon(1e-14));
      CHECK((mesh.phi[i].space() - std::sinh(1.0) * grid.nodes[i].coords()).norm() < 1e-14);
    }
    const auto origin = metric_to_hypersurface(make_constant(0.0).metric, 0.0, grid);
    for (const auto& p : origin.phi) CHECK((p.coords() - hyperboloid_origin(3).coords()).norm() < 1e-15);
  }

  TEST_CASE("only rho + t matters") {
    const auto grid = sphere_grid();
    const auto a = metric_to_hypersurface(make_constant(0.5).metric, 0.5, grid);
    const auto b = metric_to_hypersurface(make_constant(0.0).metric, 1.0, grid);
    CHECK(max_node_difference(a, b) < 1e-9);
  }

  TEST_CASE("model classes of phi, eta and psi") {
    const auto e = catalog_entry("cylindric");
    const auto mesh = metric_to_hypersurface(e.metric, 0.4, build_grid(e.metric.domain, {24, 24}, e.default_margin));
    for (std::size_t i = 0; i < mesh.size(); ++i) {
      CHECK(classify(mesh.phi[i]) == ModelClass::Hyperboloid);
      CHECK(classify(mesh.eta[i]) == ModelClass::DeSitter);
      CHECK(classify(mesh.psi[i]) == ModelClass::NullConePlus);
    }
    CHECK(model_invariant_violation(mesh) < 1e-9);
  }

  TEST_CASE("flat punctured surface lies on one horosphere") {
    const auto e = catalog_entry("flat-punctured");
    const auto mesh = metric_to_hypersurface(e.metric, 0.0, build_grid(e.metric.domain, {32, 32}, e.default_margin));
    const auto ell = MinkowskiVector::from_parts(1.0, SpherePoint::north(2).coords());
    const double first = mink_inner(mesh.phi[0], ell);
    for (const auto& p : mesh.phi) CHECK(std::abs(mink_inner(p, ell) - first) < 1e-9);
    CHECK(first == doctest::Approx(-0.5).epsilon(1e-12));
  }

  TEST_CASE("immersion threshold and minimal flow time") {
    const auto grid = sphere_grid(16);
    const auto round = make_constant(0.0);
    CHECK_FALSE(immersion_check(round.metric, grid, 0.0).immersed);
    CHECK(immersion_check(round.metric, grid, 0.01).immersed);
    CHECK(min_flow_time(round.metric, grid, 0.1) == doctest::Approx(std::log(1.25) / 2).epsilon(1e-2));
    CHECK(std::abs(min_flow_time(round.metric, grid, 0.1) - std::log(1.25) / 2) < 1e-3);
    const auto flat = catalog_entry("flat-punctured");
    CHECK(min_flow_time(flat.metric, build_grid(flat.metric.domain, {16, 16}), 0.1) == 0.0);
    const auto steep = make_height(2.0, SpherePoint::north(2));
    const double t = min_flow_time(steep.metric, grid, 0.49);
    for (const auto& x : grid.nodes) CHECK(p_eigenvalues_rescaled(steep.metric, x, t).back() <= 0.01 + 1e-12);
  }

  TEST_CASE("round trip to (gauss, support)") {
    const auto grid = sphere_grid();
    const auto mesh = metric_to_hypersurface(make_constant(0.0).metric, 1.0, grid);
    const auto samples = hypersurface_to_metric(mesh);
    for (std::size_t i = 0; i < samples.size(); ++i) {
      CHECK(samples[i].support == doctest::Approx(1.0).epsilon(1e-12));
      CHECK((samples[i].gauss.coords() - grid.nodes[i].coords()).norm() < 1e-12);
    }
    const auto flat = catalog_entry("flat-punctured");
    const auto fgrid = build_grid(flat.metric.domain, {24, 24});
    const auto fs = hypersurface_to_metric(metric_to_hypersurface(flat.metric, 2.0, fgrid));
    for (std::size_t i = 0; i < fs.size(); ++i)
      CHECK(std::abs(fs[i].support - flat.metric.rho.value(fgrid.nodes[i]) - 2.0) < 1e-9);
    const auto p = SpherePoint::north(2);
    for (const auto& s : hypersurface_to_metric(make_horosphere_reference(p, -0.4)))
      CHECK((s.gauss.coords() - p.coords()).norm() < 1e-12);
  }

  TEST_CASE("lambda-kappa dictionary") {
    CHECK(lambda_from_kappa(1.0) == 0.0);
    CHECK(lambda_from_kappa(1e12) == doctest::Approx(0.5 - 1e-12).epsilon(1e-15));
    CHECK(lambda_from_kappa(coth(1.0)) == doctest::Approx(0.5 * std::exp(-2.0)).epsilon(1e-14));
    CHECK(kappa_from_lambda(0.0) == 1.0);
    CHECK(kappa_from_lambda(-0.5) == 0.0);
    for (double k : {-0.7, 0.0, 0.3, 2.0, 40.0}) CHECK(kappa_from_lambda(lambda_from_kappa(k)) == doctest::Approx(k));
  }

  TEST_CASE("finite-difference curvature of geodesic spheres and horospheres") {
    const auto mesh = with_fd_curvatures(metric_to_hypersurface(make_constant(0.0).metric, 1.0, build_grid(DomainSpec::full_sphere(2), {64, 64}, 0.0)));
    std::size_t nodes = 0;
    for (const auto& k : mesh.kappas) {
      if (k.empty()) continue;
      ++nodes;
      for (double x : k) CHECK(std::abs(x - 1.3130352855) < 1e-3);
    }
    CHECK(nodes > 0);
    CHECK_THROWS_AS(principal_curvatures_fd(mesh, 0), MathDomainError);
    const auto flat = catalog_entry("flat-punctured");
    const auto fm = with_fd_curvatures(metric_to_hypersurface(flat.metric, 0.0, build_grid(flat.metric.domain, {64, 64})));
    for (const auto& k : fm.kappas)
      for (double x : k) CHECK(std::abs(x - 1.0) < 1e-3);
  }

  TEST_CASE("horosphere reference: constant Gauss map and kappa = -1 for its normal") {
    // With phi = a l + b m + v and eta = phi - e^s l, <d phi, d eta> = <d phi, d phi>,
    // so the shape operator of this normal is -kShapeOperatorSign * Id.
    const auto p = SpherePoint::north(2);
    const auto mesh = with_fd_curvatures(make_horosphere_reference(p, 0.3));
    const auto ell = MinkowskiVector::from_parts(1.0, p.coords());
    const double first = mink_inner(mesh.phi[0], ell);
    for (std::size_t i = 0; i < mesh.size(); ++i) {
      CHECK(std::abs(mink_inner(mesh.phi[i], ell) - first) < 1e-12);
      for (double k : mesh.kappas[i]) CHECK(k == doctest::Approx(-1.0).epsilon(1e-9));
    }
    CHECK(first == doctest::Approx(-std::exp(-0.3)).epsilon(1e-12));
    const auto probe = gauss_injectivity_probe(mesh);
    CHECK(probe.collision);
  }

  TEST_CASE("convexity classification") {
    CHECK(convexity_check({{1.2, 1.4}, {}, {1.31, 2.0}}).verdict == ConvexityVerdict::Class::UniformlyWeaklyHC);
    CHECK(convexity_check({{1.2, 1.4}}).kappa0 == doctest::Approx(1.2));
    const auto bad = convexity_check({{0.2, 0.3}, {-1.5, 0.5}, {-2.0, 0.5}});
    CHECK(bad.verdict == ConvexityVerdict::Class::NotWeaklyHC);
    REQUIRE(bad.witness_node.has_value());
    CHECK(*bad.witness_node == 1);
    CHECK(convexity_check({{-1.5, -1.2}, {-3.0, -2.0}}).verdict == ConvexityVerdict::Class::WeaklyHCOnly);
    const auto sphere = with_fd_curvatures(metric_to_hypersurface(make_constant(0.0).metric, 1.0, sphere_grid(32)));
    const auto v = convexity_check(sphere);
    CHECK(v.verdict == ConvexityVerdict::Class::UniformlyWeaklyHC);
    CHECK(v.kappa0 == doctest::Approx(coth(1.0)).epsilon(1e-6));
  }

  TEST_CASE("horospherical metric samples") {
    const auto grid = build_grid(DomainSpec::full_sphere(2), {64, 64}, 0.0);
    const auto mesh = metric_to_hypersurface(make_constant(0.0).metric, 1.0, grid);
    const auto s = horospherical_metric_samples(mesh);
    REQUIRE(!s.edges.empty());
    for (std::size_t k = 0; k < s.edges.size(); ++k) {
      const double round = sphere_distance(grid.nodes[s.edges[k][0]], grid.nodes[s.edges[k][1]]);
      CHECK(s.conformal[k] == doctest::Approx(std::exp(1.0) * round).epsilon(1e-12));
      CHECK(std::abs(s.pullback[k] / s.conformal[k] - 1.0) < 1e-2);
    }
    // The psi-pullback chord and the conformal arc differ at second order.
    auto worst = [](const HorosphericalEdgeLengths& h) {
      double w = 0.0;
      for (std::size_t k = 0; k < h.edges.size(); ++k) w = std::max(w, std::abs(h.pullback[k] - h.conformal[k]));
      return w;
    };
    const auto e = catalog_entry("cylindric");
    const double coarse = worst(horospherical_metric_samples(
        metric_to_hypersurface(e.metric, 0.5, build_grid(e.metric.domain, {32, 32}, e.default_margin))));
    const double fine = worst(horospherical_metric_samples(
        metric_to_hypersurface(e.metric, 0.5, build_grid(e.metric.domain, {64, 64}, e.default_margin))));
    CHECK(fine < coarse / 3.0);
  }

  TEST_CASE("Gauss injectivity probe") {
    auto mesh = metric_to_hypersurface(make_constant(0.0).metric, 1.0, sphere_grid(16));
    CHECK_FALSE(gauss_injectivity_probe(mesh).collision);
    mesh.gauss[200] = mesh.gauss[3];
    const auto probe = gauss_injectivity_probe(mesh);
    CHECK(probe.collision);
    REQUIRE(probe.pair.has_value());
    CHECK((*probe.pair)[0] == 3);
    CHECK((*probe.pair)[1] == 200);
  }

  TEST_CASE("curvature report and dictionary discrepancy") {
    const auto e = catalog_entry("flat-punctured");
    const auto mesh = with_fd_curvatures(metric_to_hypersurface(e.metric, 0.0, build_grid(e.metric.domain, {64, 64})));
    const auto r = curvature_report(mesh);
    CHECK(r.convexity.verdict == ConvexityVerdict::Class::UniformlyWeaklyHC);
    CHECK(r.convexity.kappa0 == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(lambda_kappa_discrepancy(e.metric, mesh).max_discrepancy < 1e-3);
    for (const auto& h : r.mean_curvature)
      if (h) CHECK(std::abs(*h - 1.0) < 1e-3);
  }
}
