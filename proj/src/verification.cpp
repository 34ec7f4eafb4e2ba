#include "horocorr/verification.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "horocorr/errors.hpp"
#include "horocorr/flow.hpp"
#include "horocorr/parallel.hpp"

namespace horocorr {

namespace {

template <typename... Parts>
std::string cat(const Parts&... parts) {
  std::ostringstream out;
  out.precision(6);
  (out << ... << parts);
  return out.str();
}

// Minkowski form evaluated independently of the library, in extended
// precision so that far-out nodes are not judged by this oracle's rounding.
double lorentz_form(const MinkowskiVector& a, const MinkowskiVector& b) {
  long double s = -static_cast<long double>(a[0]) * b[0];
  for (Eigen::Index i = 1; i < a.size(); ++i) s += static_cast<long double>(a[i]) * b[i];
  return static_cast<double>(s);
}

double coth(double x) { return std::cosh(x) / std::sinh(x); }

// Worst |kappa - expected| over nodes carrying curvatures, and their count.
struct KappaDeviation {
  double worst = 0.0;
  std::size_t nodes = 0;
};

KappaDeviation kappa_deviation(const std::vector<std::vector<double>>& kappas,
                               const std::function<std::vector<double>(std::size_t)>& expected) {
  KappaDeviation d;
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    if (kappas[i].empty()) continue;
    auto want = expected(i);
    std::sort(want.begin(), want.end());
    auto got = kappas[i];
    std::sort(got.begin(), got.end());
    for (std::size_t k = 0; k < got.size(); ++k) d.worst = std::max(d.worst, std::abs(got[k] - want[k]));
    ++d.nodes;
  }
  return d;
}

// Sorted e^{-2t} lambda_i against the dictionary image of the FD curvatures,
// the dictionary written out here rather than taken from the library.
double dictionary_discrepancy(const ConformalMetric& metric, const HypersurfaceMesh& mesh) {
  double worst = 0.0;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    if (mesh.kappas[i].empty()) continue;
    auto lambdas = p_tensor(metric, mesh.grid.nodes[i]).lambdas;
    for (double& l : lambdas) l *= std::exp(-2.0 * mesh.flow_time);
    std::vector<double> from_kappa;
    for (double k : mesh.kappas[i]) from_kappa.push_back(0.5 - 1.0 / (1.0 + k));
    std::sort(lambdas.begin(), lambdas.end());
    std::sort(from_kappa.begin(), from_kappa.end());
    for (std::size_t k = 0; k < lambdas.size(); ++k)
      worst = std::max(worst, std::abs(lambdas[k] - from_kappa[k]));
  }
  return worst;
}

ParameterGrid entry_grid(const CatalogEntry& e, const std::vector<int>& resolution) {
  return build_grid(e.metric.domain, resolution, e.default_margin);
}

const std::vector<std::string>& mesh_catalog() {
  static const std::vector<std::string> ids{"constant:0", "flat-punctured", "cylindric"};
  return ids;
}

void criterion_invariants(CheckLog& log, int n) {
  for (const auto& id : mesh_catalog()) {
    const auto e = catalog_entry(id, n);
    const auto grid = entry_grid(e, default_resolution(n));
    const double t0 = min_flow_time(e.metric, grid, 0.01);
    for (double t : {t0 + 0.1, 1.0, 3.0}) {
      const auto mesh = metric_to_hypersurface(e.metric, t, grid);
      double worst = 0.0;
      for (std::size_t i = 0; i < mesh.size(); ++i) {
        worst = std::max({worst, std::abs(lorentz_form(mesh.phi[i], mesh.phi[i]) + 1.0),
                          std::abs(lorentz_form(mesh.eta[i], mesh.eta[i]) - 1.0),
                          std::abs(lorentz_form(mesh.phi[i], mesh.eta[i])),
                          std::abs(lorentz_form(mesh.phi[i], mesh.psi[i]) + 1.0)});
      }
      log.expect(worst < 1e-9, cat(id, " n=", n, " t=", t, " nodes=", mesh.size(),
                                   ": max invariant violation ", worst, " < 1e-9"));
    }
  }
}

void criterion_sphere(CheckLog& log, int n, double tol, const std::vector<int>& resolution) {
  log.expect(std::abs(coth(1.0) - 1.3130352855) < 1e-10, cat("coth 1 = ", coth(1.0)));
  const auto e = catalog_entry("constant:0", n);
  const auto grid = build_grid(e.metric.domain, resolution, 0.0);
  for (double t : {1.0, 2.0}) {
    const auto mesh = with_fd_curvatures(metric_to_hypersurface(e.metric, t, grid));
    const auto d = kappa_deviation(mesh.kappas, [&](std::size_t) {
      return std::vector<double>(static_cast<std::size_t>(n), coth(t));
    });
    log.expect(d.nodes > 0 && d.worst < tol, cat("n=", n, " t=", t, ": max |kappa - coth t| = ", d.worst,
                                                 " < ", tol, " over ", d.nodes, " interior nodes"));
  }
}

void criterion_dictionary(CheckLog& log) {
  // The named entries are umbilic or invariant along the grid axes, so the
  // stencil's truncation error cancels and the discrepancy sits at roundoff
  // at every resolution. Shrinkage is then measured on a metric without
  // those symmetries.
  constexpr double kRoundoffFloor = 1e-10;
  for (const std::string id : {"flat-punctured", "cylindric"}) {
    const auto e = catalog_entry(id);
    for (double t : {0.5, 1.0}) {
      const auto coarse = with_fd_curvatures(metric_to_hypersurface(e.metric, t, entry_grid(e, {32, 32})));
      const auto fine = with_fd_curvatures(metric_to_hypersurface(e.metric, t, entry_grid(e, {64, 64})));
      const double dc = dictionary_discrepancy(e.metric, coarse);
      const double df = dictionary_discrepancy(e.metric, fine);
      log.expect(df < 1e-3, cat(id, " t=", t, " 64x64: max discrepancy ", df, " < 0.001"));
      const bool shrinks = df * 3.0 <= dc || (dc < kRoundoffFloor && df < kRoundoffFloor);
      log.expect(shrinks, cat(id, " t=", t, ": 32x32 -> 64x64 discrepancy ", dc, " -> ", df,
                              " (shrinks 3x, or both below roundoff floor ", kRoundoffFloor, ")"));
    }
  }
  const auto h = catalog_entry("height:0.3");
  const double t = 0.6;
  double previous = 0.0;
  for (int r : {16, 32, 64}) {
    const auto grid = build_grid(h.metric.domain, {r, r}, 0.0);
    const double d = dictionary_discrepancy(h.metric, with_fd_curvatures(metric_to_hypersurface(h.metric, t, grid)));
    if (r == 16) {
      previous = d;
      continue;
    }
    log.expect(d < 1e-3 && d * 3.0 <= previous,
               cat("height:0.3 t=", t, " ", r / 2, " -> ", r, ": discrepancy ", previous, " -> ", d,
                   " (ratio ", previous / d, " >= 3)"));
    previous = d;
  }
}

void criterion_bernstein(CheckLog& log) {
  const SpherePoint p = SpherePoint::north(2);
  const auto e = make_flat_punctured(p);
  std::mt19937_64 rng(0x5eed2026);
  std::normal_distribution<double> normal;
  double worst_p = 0.0;
  int samples = 0;
  while (samples < 500) {
    const Vec v = Vec::NullaryExpr(3, [&] { return normal(rng); });
    if (v.norm() < 1e-6) continue;
    const SpherePoint x(v);
    if (sphere_distance(x, p) < 0.1) continue;
    worst_p = std::max(worst_p, p_tensor(e.metric, x).matrix.cwiseAbs().maxCoeff());
    ++samples;
  }
  log.expect(worst_p < 1e-9, cat("max |P| over 500 samples = ", worst_p, " < 1e-9"));

  const MinkowskiVector ell = MinkowskiVector::from_parts(1.0, p.coords());
  auto spread = [&](const HypersurfaceMesh& m) {
    double lo = INFINITY, hi = -INFINITY;
    for (const auto& phi : m.phi) {
      const double v = lorentz_form(phi, ell);
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
    return std::array<double, 2>{lo, hi};
  };
  const auto mesh = with_fd_curvatures(metric_to_hypersurface(e.metric, 0.0, entry_grid(e, {64, 64})));
  const auto s0 = spread(mesh);
  log.expect(s0[1] - s0[0] < 1e-9, cat("t=0: <phi,(1,p)> in [", s0[0], ", ", s0[1], "], spread ",
                                       s0[1] - s0[0], " < 1e-9"));
  double worst_h = 0.0;
  std::size_t nodes = 0;
  for (const auto& k : mesh.kappas) {
    if (k.empty()) continue;
    double mean = 0.0;
    for (double x : k) mean += x;
    worst_h = std::max(worst_h, std::abs(mean / static_cast<double>(k.size()) - 1.0));
    ++nodes;
  }
  log.expect(nodes > 0 && worst_h < 1e-3, cat("t=0: max |H - 1| = ", worst_h, " < 0.001 over ", nodes, " nodes"));
  for (double t : {0.5, 1.0}) {
    const auto flowed = normal_flow(mesh, t, true);
    const auto d = kappa_deviation(flowed.fd_kappas, [](std::size_t) { return std::vector<double>{1.0, 1.0}; });
    log.expect(d.nodes > 0 && d.worst < 1e-3, cat("flow by ", t, ": max |kappa - 1| = ", d.worst, " < 0.001"));
    const auto st = spread(flowed.mesh);
    log.expect(st[1] - st[0] < 1e-9, cat("flow by ", t, ": <phi,(1,p)> spread ", st[1] - st[0], " < 1e-9"));
  }
}

void criterion_riccati(CheckLog& log) {
  const auto e = catalog_entry("constant:0");
  const auto grid = build_grid(e.metric.domain, {64, 64}, 0.0);
  const auto base = with_fd_curvatures(metric_to_hypersurface(e.metric, 1.0, grid));
  const auto flowed = normal_flow(base, 1.0, true);
  const double predicted = riccati_curvature(coth(1.0), 1.0);
  log.expect(std::abs(predicted - coth(2.0)) < 1e-12,
             cat("riccati(coth 1, 1) = ", predicted, ", |. - coth 2| = ", std::abs(predicted - coth(2.0))));
  const auto d = kappa_deviation(flowed.fd_kappas, [&](std::size_t) { return std::vector<double>{predicted, predicted}; });
  log.expect(d.nodes > 0 && d.worst < 1e-3, cat("flowed FD kappa vs riccati: max deviation ", d.worst, " < 0.001"));

  std::mt19937_64 rng(0xacce55);
  std::uniform_real_distribution<double> kappa_dist(-0.9, 5.0), time_dist(0.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const double k = kappa_dist(rng), s = time_dist(rng), t = time_dist(rng);
    worst = std::max(worst, std::abs(riccati_curvature(riccati_curvature(k, s), t) - riccati_curvature(k, s + t)));
  }
  log.expect(worst < 1e-12, cat("semigroup identity over 1000 triples: max error ", worst, " < 1e-12"));
}

void criterion_flow(CheckLog& log) {
  struct Case {
    std::string id;
    double t;
  };
  for (const Case& c : {Case{"flat-punctured", 0.0}, Case{"cylindric", 0.5}, Case{"constant:0", 1.0}}) {
    const auto e = catalog_entry(c.id);
    const auto base = metric_to_hypersurface(e.metric, c.t, entry_grid(e, {64, 64}));
    for (double s : {0.7, 2.0}) {
      const auto flowed = normal_flow(base, s);
      const auto report = flow_invariance_check(base, flowed);
      double gauss = 0.0;
      for (std::size_t i = 0; i < base.size(); ++i) {
        const Vec l = (flowed.mesh.phi[i] - flowed.mesh.eta[i]).coords();
        gauss = std::max(gauss, (l.tail(l.size() - 1) / l(0) - base.grid.nodes[i].coords()).cwiseAbs().maxCoeff());
      }
      log.expect(gauss < 1e-12 && report.gauss_max_deviation < 1e-12,
                 cat(c.id, " from t=", c.t, " by ", s, ": Gauss deviation ", gauss, " < 1e-12"));
      log.expect(report.edge_scale_max_rel_error < 1e-9,
                 cat(c.id, " from t=", c.t, " by ", s, ": horospherical edge scale error ",
                     report.edge_scale_max_rel_error, " < 1e-9"));
    }
  }
}

void criterion_beta(CheckLog& log) {
  const SpherePoint p = SpherePoint::north(2);
  const SpherePoint toward = SpherePoint::basis(3, 0);
  const auto flat = make_flat_punctured(p);
  const auto cyl = make_cylindric(p, p.antipode());
  struct Probe {
    const CatalogEntry* entry;
    SpherePoint boundary;
    double end_angle;
    double bound;
  };
  for (const Probe& probe : {Probe{&flat, p, 1e-4, 1e3}, Probe{&cyl, p, 1e-3, 5.0},
                             Probe{&cyl, p.antipode(), 1e-3, 5.0}}) {
    const auto& e = *probe.entry;
    const auto scan = boundary_divergence_scan(e.metric, probe.boundary, dyadic_approach(probe.boundary, 20));
    bool increasing = true;
    for (std::size_t i = scan.betas.size() / 2 + 1; i < scan.betas.size(); ++i)
      increasing = increasing && scan.betas[i] > scan.betas[i - 1];
    const bool diverging = scan.verdict == DivergenceScan::Verdict::Diverging;
    log.expect(diverging && increasing && scan.betas.back() > 1e6,
               cat(e.id, " toward x_", probe.boundary[2] > 0 ? "north" : "south", ": ",
                   diverging ? "Diverging" : "Inconclusive", ", last beta ", scan.betas.back()));
    const auto curve = meridian_points(probe.boundary, toward,
                                       shrinking_angles(std::numbers::pi / 2, probe.end_angle, 0.05, 0.1, 0.9));
    const double length = completeness_probe(e.metric, curve).back();
    log.expect(length > probe.bound, cat(e.id, ": length from the equator to angle ", probe.end_angle,
                                         " = ", length, " > ", probe.bound));
  }
}

void criterion_gradient(CheckLog& log, const std::vector<int>& dims) {
  for (int n : dims) {
    for (auto [C, C0] : {std::pair{1.0, 1.0}, std::pair{2.0, 1.0}, std::pair{1.0, 5.0}}) {
      const auto k = gradient_bound_constants(C, C0, n);
      const double K = std::max(1.0, std::sqrt(static_cast<double>(n)) / 2.0);
      const double root = std::sqrt(k.A);
      const double angle = std::atan(C / root);
      const double delta = (std::numbers::pi / 2 - angle) / (2.0 * root);
      const double ybar = root * std::tan(std::numbers::pi / 4 + angle / 2);
      const double lhs = C0 * C * std::exp(2.0 * K * delta * ybar) + 1.0;
      const std::string head = cat("n=", n, " (C,C0)=(", C, ",", C0, ") A=", k.A, ": ");
      log.expect(std::abs(k.K - K) < 1e-15 && std::abs(k.delta - delta) <= 1e-9 * delta &&
                     std::abs(k.Ybar - ybar) <= 1e-9 * ybar,
                 cat(head, "delta ", k.delta, ", Ybar ", k.Ybar, " match their identities to 1e-9"));
      log.expect(lhs <= k.A, cat(head, "C0 C e^{2K delta Ybar} + 1 = ", lhs, " <= A"));
      for (double y0 : {C, ybar}) {
        const double blow_up = (std::numbers::pi / 2 - std::atan(y0 / root)) / root;
        const double t = 0.8 * blow_up;
        const double closed = ode_comparison_solution(k.A, y0, t);
        const double oracle = rk4_riccati_oracle(k.A, y0, t, 20000);
        const double rel = std::abs(closed - oracle) / std::abs(oracle);
        log.expect(rel < 1e-6 && std::abs(ode_blow_up_time(k.A, y0) - blow_up) <= 1e-12 * blow_up,
                   cat(head, "y0=", y0, " at 0.8 T: closed form vs RK4 rel error ", rel, " < 1e-6"));
      }
    }
  }
}

void criterion_embedding(CheckLog& log) {
  const auto cyl = catalog_entry("cylindric");
  const auto mesh = metric_to_hypersurface(cyl.metric, 3.0, entry_grid(cyl, {128, 64}));
  const auto fixture = make_selfintersecting_fixture(true);
  const auto control = make_selfintersecting_fixture(false);
  const int saved = thread_count();
  std::vector<EmbeddingVerdict> surface, figure;
  for (int threads : {1, std::max(4, saved)}) {
    set_thread_count(threads);
    surface.push_back(embeddedness_check(mesh));
    figure.push_back(find_self_intersection(fixture.mesh));
  }
  set_thread_count(saved);
  log.expect(surface[0].embedded, cat("cylindric t=3 on 128x64: ", surface[0].embedded ? "Embedded" : "SelfIntersecting",
                                      " (", surface[0].candidate_pairs_tested, " pairs tested)"));
  const double miss = figure[0].embedded ? INFINITY : fixture.distance_to_crossing(figure[0].intersection_point);
  log.expect(!figure[0].embedded && miss < 1e-6,
             cat("figure-eight: ", figure[0].embedded ? "Embedded" : "SelfIntersecting",
                 ", witness distance to designed crossing ", miss, " < 1e-6"));
  log.expect(find_self_intersection(control.mesh).embedded, "figure-eight without the crossing: Embedded");
  auto same = [](const EmbeddingVerdict& a, const EmbeddingVerdict& b) {
    return a.embedded == b.embedded && a.witness == b.witness && a.intersection_point == b.intersection_point &&
           a.candidate_pairs_tested == b.candidate_pairs_tested;
  };
  log.expect(same(surface[0], surface[1]) && same(figure[0], figure[1]),
             cat("verdicts identical with 1 and ", std::max(4, saved), " threads"));
}

void criterion_roundtrip(CheckLog& log) {
  for (const auto& id : mesh_catalog()) {
    const auto e = catalog_entry(id);
    const auto grid = entry_grid(e, {64, 64});
    const double t0 = min_flow_time(e.metric, grid, 0.01);
    for (double t : {t0 + 0.1, 1.0}) {
      const auto mesh = metric_to_hypersurface(e.metric, t, grid);
      const auto samples = hypersurface_to_metric(mesh);
      double support = 0.0, gauss = 0.0;
      for (std::size_t i = 0; i < samples.size(); ++i) {
        support = std::max(support, std::abs(samples[i].support - (e.metric.rho.value(grid.nodes[i]) + t)));
        gauss = std::max(gauss, (samples[i].gauss.coords() - grid.nodes[i].coords()).cwiseAbs().maxCoeff());
      }
      log.expect(support < 1e-9 && gauss < 1e-9,
                 cat(id, " t=", t, ": support error ", support, ", gauss error ", gauss, " < 1e-9"));
    }
  }
  const SpherePoint p = SpherePoint::north(2);
  const auto horo = make_horosphere_reference(p, 0.3);
  double support = 0.0, gauss = 0.0;
  for (const auto& s : hypersurface_to_metric(horo)) {
    support = std::max(support, std::abs(s.support - 0.3));
    gauss = std::max(gauss, (s.gauss.coords() - p.coords()).cwiseAbs().maxCoeff());
  }
  log.expect(support < 1e-9 && gauss < 1e-9,
             cat("horosphere s=0.3: support error ", support, ", gauss error ", gauss, " < 1e-9"));
}

void criterion_dim3(CheckLog& log) {
  criterion_invariants(log, 3);
  criterion_sphere(log, 3, 5e-3, default_resolution(3));
  criterion_gradient(log, {3});
}

}  // namespace

void CheckLog::expect(bool ok, const std::string& what) {
  lines_.push_back(std::string(ok ? "  + " : "  - ") + what);
  if (!ok && ok_) first_failure_ = what;
  ok_ = ok_ && ok;
}

std::vector<Criterion> acceptance_criteria() {
  return {
      {1, "invariants", "model invariants on catalog meshes", [](CheckLog& l) { criterion_invariants(l, 2); }},
      {2, "sphere", "geodesic spheres have kappa = coth t",
       [](CheckLog& l) { criterion_sphere(l, 2, 1e-3, {64, 64}); }},
      {3, "dictionary", "lambda-kappa dictionary and its convergence", criterion_dictionary},
      {4, "bernstein", "flat punctured metric gives a horosphere", criterion_bernstein},
      {5, "riccati", "Riccati law under the normal flow", criterion_riccati},
      {6, "flow", "Gauss map and horospherical metric under the flow", criterion_flow},
      {7, "beta", "beta divergence and completeness at the punctures", criterion_beta},
      {8, "gradient", "gradient-bound constants and comparison ODE",
       [](CheckLog& l) { criterion_gradient(l, {2, 3}); }},
      {9, "embedding", "embeddedness verdicts", criterion_embedding},
      {10, "roundtrip", "metric -> hypersurface -> metric", criterion_roundtrip},
      {11, "dim3", "criteria 1, 2 and 8 at n = 3", criterion_dim3},
  };
}

std::vector<CriterionResult> run_acceptance(const std::string& filter) {
  std::vector<CriterionResult> results;
  for (const auto& c : acceptance_criteria()) {
    if (!filter.empty() && filter != c.tag && filter != std::to_string(c.id)) continue;
    CriterionResult r{c.id, c.tag, c.title, false, {}, {}, 0.0};
    CheckLog log;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(log);
      r.passed = log.ok();
      r.first_failure = log.first_failure();
    } catch (const std::exception& ex) {
      log.expect(false, cat("exception: ", ex.what()));
      r.passed = false;
      r.first_failure = log.first_failure();
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    r.details = log.lines();
    results.push_back(std::move(r));
  }
  if (results.empty()) throw ConfigError("no acceptance criterion matches filter '" + filter + "'");
  return results;
}

std::vector<SpherePoint> dyadic_approach(const SpherePoint& boundary_point, int count) {
  const int dim = boundary_point.dim() + 1;
  // Leave along the coordinate axis least aligned with the boundary point.
  int axis = 0;
  for (int i = 1; i < dim; ++i)
    if (std::abs(boundary_point[i]) < std::abs(boundary_point[axis])) axis = i;
  std::vector<double> angles;
  for (int k = 1; k <= count; ++k) angles.push_back(std::ldexp(1.0, -k));
  return meridian_points(boundary_point, SpherePoint::basis(dim, axis), angles);
}

double rk4_riccati_oracle(double A, double y0, double t, int steps) {
  const double h = t / steps;
  auto f = [A](double y) { return y * y + A; };
  double y = y0;
  for (int i = 0; i < steps; ++i) {
    const double k1 = f(y), k2 = f(y + 0.5 * h * k1), k3 = f(y + 0.5 * h * k2), k4 = f(y + h * k3);
    y += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  return y;
}

ExpectationResult check_expectation(const CatalogEntry& entry, const Expectation& e,
                                    const ParameterGrid& grid, const std::vector<double>& times) {
  ExpectationResult r{e.name, e.kind, false, 0.0, e.tolerance, {}};
  const auto& metric = entry.metric;
  const auto n = static_cast<std::size_t>(metric.n());
  auto meshes = [&](bool curvatures) {
    std::vector<HypersurfaceMesh> out;
    for (double t : times) {
      auto m = metric_to_hypersurface(metric, t, grid);
      out.push_back(curvatures ? with_fd_curvatures(m) : std::move(m));
    }
    return out;
  };
  if (e.kind == "lambda_constant" || e.kind == "round_p_scalar") {
    for (const auto& x : grid.nodes) {
      const auto s = p_tensor(metric, x);
      if (e.kind == "round_p_scalar") {
        const Mat diff = s.matrix - e.values[0] * Mat::Identity(s.matrix.rows(), s.matrix.cols());
        r.measured = std::max(r.measured, diff.cwiseAbs().maxCoeff());
      } else {
        for (std::size_t k = 0; k < n; ++k) r.measured = std::max(r.measured, std::abs(s.lambdas[k] - e.values[k]));
      }
    }
  } else if (e.kind == "kappa_dictionary" || e.kind == "kappa_geodesic_sphere" || e.kind == "mean_curvature") {
    std::size_t nodes = 0;
    for (const auto& m : meshes(true)) {
      const double t = m.flow_time;
      for (const auto& k : m.kappas) {
        if (k.empty()) continue;
        ++nodes;
        if (e.kind == "mean_curvature") {
          double mean = 0.0;
          for (double x : k) mean += x;
          r.measured = std::max(r.measured, std::abs(mean / static_cast<double>(k.size()) - e.values[0]));
          continue;
        }
        std::vector<double> want;
        for (std::size_t i = 0; i < n; ++i) {
          if (e.kind == "kappa_geodesic_sphere") {
            want.push_back(coth(e.values[0] + t));
          } else {
            const double l = std::exp(-2.0 * t) * e.values[i];
            want.push_back((0.5 + l) / (0.5 - l));
          }
        }
        std::sort(want.begin(), want.end());
        for (std::size_t i = 0; i < n; ++i) r.measured = std::max(r.measured, std::abs(k[i] - want[i]));
      }
    }
    if (nodes == 0) r.measured = INFINITY;
  } else if (e.kind == "horosphere_constancy") {
    Vec axis(static_cast<Eigen::Index>(e.values.size()));
    for (std::size_t i = 0; i < e.values.size(); ++i) axis(static_cast<Eigen::Index>(i)) = e.values[i];
    const auto ell = MinkowskiVector::from_parts(1.0, axis);
    for (const auto& m : meshes(false)) {
      double lo = INFINITY, hi = -INFINITY;
      for (const auto& phi : m.phi) {
        lo = std::min(lo, lorentz_form(phi, ell));
        hi = std::max(hi, lorentz_form(phi, ell));
      }
      r.measured = std::max(r.measured, hi - lo);
    }
  } else if (e.kind == "rotational_symmetry") {
    Vec axis(static_cast<Eigen::Index>(e.values.size()));
    for (std::size_t i = 0; i < e.values.size(); ++i) axis(static_cast<Eigen::Index>(i)) = e.values[i];
    if (grid.kind != ParameterGrid::Kind::Polar || std::abs(grid.axis.coords().dot(axis)) < 1.0 - 1e-12) {
      r.detail = "grid is not polar about the symmetry axis";
      r.measured = INFINITY;
    } else {
      // On a polar grid about the axis, (phi_0, phi.axis, |phi_perp|) must only
      // depend on the polar index, and phi_perp must point along x_perp.
      for (const auto& m : meshes(false)) {
        std::vector<std::optional<std::array<double, 3>>> ring(static_cast<std::size_t>(grid.sizes[0]));
        for (std::size_t i = 0; i < m.size(); ++i) {
          const Vec space = m.phi[i].space();
          const double along = space.dot(axis);
          const Vec perp = space - along * axis;
          Vec xperp = grid.nodes[i].coords() - grid.nodes[i].coords().dot(axis) * axis;
          xperp.normalize();
          const double scale = std::max(1.0, m.phi[i].time());
          const std::array<double, 3> inv{m.phi[i].time(), along, perp.norm()};
          auto& ref = ring[static_cast<std::size_t>(grid.multi_index(i)[0])];
          if (!ref) ref = inv;
          for (int k = 0; k < 3; ++k) r.measured = std::max(r.measured, std::abs(inv[k] - (*ref)[k]) / scale);
          r.measured = std::max(r.measured, (perp - perp.dot(xperp) * xperp).norm() / scale);
        }
      }
    }
  } else if (e.kind == "beta_diverges") {
    const std::size_t dim = n + 1;
    bool all = true;
    for (std::size_t b = 0; b + dim <= e.values.size(); b += dim) {
      Vec v(static_cast<Eigen::Index>(dim));
      for (std::size_t i = 0; i < dim; ++i) v(static_cast<Eigen::Index>(i)) = e.values[b + i];
      const SpherePoint point(v);
      const auto scan = boundary_divergence_scan(metric, point, dyadic_approach(point, 20));
      all = all && scan.verdict == DivergenceScan::Verdict::Diverging;
      r.measured = scan.betas.back();
    }
    r.passed = all;
    r.detail = all ? "Diverging" : "Inconclusive";
    return r;
  } else {
    throw ConfigError("unknown expectation kind '" + e.kind + "'");
  }
  r.passed = r.measured <= e.tolerance;
  return r;
}

std::vector<ExpectationResult> check_expectations(const CatalogEntry& entry, const ParameterGrid& grid,
                                                  const std::vector<double>& times) {
  std::vector<ExpectationResult> out;
  for (const auto& e : entry.expectations) out.push_back(check_expectation(entry, e, grid, times));
  return out;
}

}  // namespace horocorr
