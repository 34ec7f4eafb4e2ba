#include "horocorr/flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "horocorr/errors.hpp"
#include "horocorr/parallel.hpp"

namespace horocorr {

double riccati_curvature(double kappa, double t) {
  const double th = std::tanh(t);
  const double denom = 1.0 + kappa * th;
  if (std::abs(denom) <= 1e-12) {
    std::ostringstream msg;
    msg << "riccati_curvature: focal point (kappa = " << kappa << ", t = " << t << ")";
    throw MathDomainError(msg.str());
  }
  return (kappa + th) / denom;
}

FlowResult normal_flow(const HypersurfaceMesh& mesh, double t, bool measure_curvatures) {
  FlowResult result;
  result.t = t;
  HypersurfaceMesh& out = result.mesh;
  out = mesh;
  out.flow_time = mesh.flow_time + t;
  out.kappas.assign(mesh.size(), {});
  const double c = std::cosh(t);
  const double s = std::sinh(t);
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    out.phi[i] = c * mesh.phi[i] - s * mesh.eta[i];
    out.eta[i] = c * mesh.eta[i] - s * mesh.phi[i];
    out.psi[i] = out.phi[i] - out.eta[i];
    out.support[i] = mesh.support[i] + t;
  }

  result.riccati_kappas.assign(mesh.size(), {});
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    for (double k : mesh.kappas[i]) result.riccati_kappas[i].push_back(riccati_curvature(k, t));
    std::sort(result.riccati_kappas[i].begin(), result.riccati_kappas[i].end());
  }
  if (measure_curvatures) {
    out = with_fd_curvatures(out);
    result.fd_kappas = out.kappas;
  }
  return result;
}

FlowInvarianceReport flow_invariance_check(const HypersurfaceMesh& base, const FlowResult& flowed) {
  FlowInvarianceReport report;
  const HypersurfaceMesh& moved = flowed.mesh;
  if (moved.size() != base.size()) throw DimensionError("flow_invariance_check: meshes differ in size");

  // Gauss map and support recomputed from the flowed phi, eta.
  const auto recovered = hypersurface_to_metric(moved);
  HypersurfaceMesh rebuilt = moved;
  for (std::size_t i = 0; i < base.size(); ++i) {
    report.gauss_max_deviation = std::max(
        report.gauss_max_deviation, (recovered[i].gauss.coords() - base.gauss[i].coords()).cwiseAbs().maxCoeff());
    rebuilt.gauss[i] = recovered[i].gauss;
    rebuilt.support[i] = recovered[i].support;
  }
  if (report.gauss_max_deviation >= report.gauss_tolerance) {
    std::ostringstream msg;
    msg << "Gauss map moved by " << report.gauss_max_deviation;
    report.violations.push_back(msg.str());
  }

  const auto before = horospherical_metric_samples(base);
  const auto after = horospherical_metric_samples(rebuilt);
  const double factor = std::exp(flowed.t);
  for (std::size_t e = 0; e < before.edges.size(); ++e) {
    const double expected = factor * before.conformal[e];
    if (expected == 0.0) continue;
    report.edge_scale_max_rel_error =
        std::max(report.edge_scale_max_rel_error, std::abs(after.conformal[e] - expected) / expected);
  }
  if (report.edge_scale_max_rel_error >= report.edge_tolerance) {
    std::ostringstream msg;
    msg << "horospherical edge lengths deviate from e^t scaling by " << report.edge_scale_max_rel_error;
    report.violations.push_back(msg.str());
  }

  const HypersurfaceMesh base_k = base.has_kappas() ? base : with_fd_curvatures(base);
  const auto measured = flowed.fd_kappas.empty() ? with_fd_curvatures(moved).kappas : flowed.fd_kappas;
  double worst = 0.0;
  bool any = false;
  for (std::size_t i = 0; i < base.size(); ++i) {
    if (base_k.kappas[i].empty() || measured[i].empty()) continue;
    std::vector<double> predicted;
    for (double k : base_k.kappas[i]) predicted.push_back(riccati_curvature(k, flowed.t));
    std::sort(predicted.begin(), predicted.end());
    for (std::size_t j = 0; j < predicted.size(); ++j)
      worst = std::max(worst, std::abs(predicted[j] - measured[i][j]));
    any = true;
  }
  if (any) {
    report.kappa_max_discrepancy = worst;
    if (worst >= report.kappa_tolerance) {
      std::ostringstream msg;
      msg << "flowed curvatures differ from the Riccati prediction by " << worst;
      report.violations.push_back(msg.str());
    }
  }
  return report;
}

BallMesh to_ball_mesh(const HypersurfaceMesh& mesh) {
  if (mesh.n != 2) throw DimensionError("to_ball_mesh: only surfaces in H^3 can be triangulated");
  BallMesh ball;
  ball.vertices.reserve(mesh.size());
  for (const auto& p : mesh.phi) {
    const Vec b = to_poincare_ball(p).coords;
    ball.vertices.emplace_back(b(0), b(1), b(2));
  }
  ball.triangles = mesh.grid.triangles;
  return ball;
}

EmbeddingVerdict embeddedness_check(const HypersurfaceMesh& mesh) {
  return find_self_intersection(to_ball_mesh(mesh));
}

EmbeddingTimeResult find_embedding_time(const ConformalMetric& metric, const ParameterGrid& grid,
                                        const std::vector<double>& t_lattice) {
  if (t_lattice.empty()) throw ConfigError("find_embedding_time: empty time lattice");
  if (!std::is_sorted(t_lattice.begin(), t_lattice.end()))
    throw ConfigError("find_embedding_time: time lattice must be ascending");
  EmbeddingTimeResult result;
  for (double t : t_lattice) {
    const auto immersion = immersion_check(metric, grid, t);
    if (!immersion.immersed) {
      std::ostringstream msg;
      msg << "find_embedding_time: t = " << t << " is below the immersion threshold (node "
          << *immersion.witness_node << ")";
      throw MathDomainError(msg.str());
    }
    const auto verdict = embeddedness_check(metric_to_hypersurface(metric, t, grid));
    if (verdict.embedded && !result.first_embedded_t) result.first_embedded_t = t;
    if (!verdict.embedded && result.first_embedded_t) result.monotone = false;
    result.times.push_back(t);
    result.verdicts.push_back(verdict);
  }
  return result;
}

}  // namespace horocorr
