#pragma once

#include <optional>
#include <string>
#include <vector>

#include "horocorr/correspondence.hpp"
#include "horocorr/intersect.hpp"

namespace horocorr {

/// (kappa + tanh t) / (1 + kappa tanh t). Throws MathDomainError when the
/// denominator is within 1e-12 of zero (a focal point).
double riccati_curvature(double kappa, double t);

struct FlowResult {
  double t = 0.0;  // flow increment applied to the input mesh
  HypersurfaceMesh mesh;
  /// Input kappas pushed through riccati_curvature (empty where the input had none).
  std::vector<std::vector<double>> riccati_kappas;
  /// Finite-difference kappas of the flowed mesh, when requested.
  std::vector<std::vector<double>> fd_kappas;
};

/// Geodesic normal flow phi^t = phi cosh t - eta sinh t with
/// eta^t = -phi sinh t + eta cosh t, so psi^t = e^t psi: the Gauss map is
/// unchanged and the support function shifts by t.
FlowResult normal_flow(const HypersurfaceMesh& mesh, double t, bool measure_curvatures = false);

struct FlowInvarianceReport {
  double gauss_max_deviation = 0.0;
  double edge_scale_max_rel_error = 0.0;
  std::optional<double> kappa_max_discrepancy;
  double gauss_tolerance = 1e-12;
  double edge_tolerance = 1e-9;
  double kappa_tolerance = 1e-3;
  std::vector<std::string> violations;
  bool pass() const { return violations.empty(); }
};

/// Gauss map recomputed from the flowed phi and eta against the base,
/// horospherical edge lengths against e^t times the base lengths, and
/// finite-difference curvatures of the flowed mesh against the Riccati
/// prediction from the base finite-difference curvatures.
FlowInvarianceReport flow_invariance_check(const HypersurfaceMesh& base, const FlowResult& flowed);

/// Poincare ball image of an n = 2 mesh with the grid triangulation.
BallMesh to_ball_mesh(const HypersurfaceMesh& mesh);

EmbeddingVerdict embeddedness_check(const HypersurfaceMesh& mesh);

struct EmbeddingTimeResult {
  std::optional<double> first_embedded_t;
  std::vector<double> times;
  std::vector<EmbeddingVerdict> verdicts;
  /// Once embedded, every later lattice time is embedded too.
  bool monotone = true;
};

/// Builds the surface at each lattice time and checks embeddedness.
EmbeddingTimeResult find_embedding_time(const ConformalMetric& metric, const ParameterGrid& grid,
                                        const std::vector<double>& t_lattice);

}  // namespace horocorr
