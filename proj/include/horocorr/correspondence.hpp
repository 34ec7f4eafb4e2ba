#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "horocorr/conformal.hpp"
#include "horocorr/lorentz.hpp"

namespace horocorr {

/// Sampled immersion over a parameter grid together with its unit normal,
/// light cone map, support function and hyperbolic Gauss map.
struct HypersurfaceMesh {
  ParameterGrid grid;
  int n = 2;
  std::vector<MinkowskiVector> phi;  // hyperboloid
  std::vector<MinkowskiVector> eta;  // de Sitter
  std::vector<MinkowskiVector> psi;  // future null cone, psi = phi - eta
  std::vector<double> support;       // ln psi_0
  std::vector<SpherePoint> gauss;
  /// Ascending principal curvatures; empty where not computed (stencil
  /// boundary).
  std::vector<std::vector<double>> kappas;
  double flow_time = 0.0;
  std::string label;

  std::size_t size() const { return phi.size(); }
  bool has_kappas() const;
};

/// The immersion attached to e^{2(rho + t)} g: with sigma = rho + t and
/// g = grad rho,
///   phi = (e^sigma / 2)(1 + e^{-2 sigma}(1 + |g|^2)) (1, x) + e^{-sigma} (0, -x + g),
///   psi = e^sigma (1, x),  eta = phi - psi.
HypersurfaceMesh metric_to_hypersurface(const ConformalMetric& metric, double t,
                                        const ParameterGrid& grid);

struct ImmersionCheck {
  bool immersed = true;
  double max_rescaled_lambda = 0.0;  // max over nodes of e^{-2t} lambda_max
  std::optional<std::size_t> witness_node;
};

/// The construction is an immersion where every e^{-2t} lambda_i < 1/2.
ImmersionCheck immersion_check(const ConformalMetric& metric, const ParameterGrid& grid,
                               double t);

/// Smallest t >= 0 on a 1e-3 lattice with max_grid e^{-2t} lambda_max <= 1/2 - margin.
double min_flow_time(const ConformalMetric& metric, const ParameterGrid& grid, double margin);

struct SupportSample {
  SpherePoint gauss;
  double support = 0.0;
};

/// Recovers (Gauss map, support function) from phi and eta at every node.
std::vector<SupportSample> hypersurface_to_metric(const HypersurfaceMesh& mesh);

/// 1/2 - 1/(1 + kappa).
double lambda_from_kappa(double kappa);
/// (1/2 + lambda) / (1/2 - lambda).
double kappa_from_lambda(double lambda);

/// II = kShapeOperatorSign * <d phi, d eta>. Fixed so that the geodesic sphere
/// of radius r about O built from a constant factor has kappa = coth r.
inline constexpr double kShapeOperatorSign = -1.0;
/// Half width of the centered five-point difference stencil.
inline constexpr int kStencilHalfWidth = 2;

/// Principal curvatures at `node` from fourth-order central differences of phi
/// and eta along each grid axis; eigenvalues of I^{-1} II, ascending. Throws
/// MathDomainError for stencil-boundary nodes or a degenerate first form.
std::vector<double> principal_curvatures_fd(const HypersurfaceMesh& mesh, std::size_t node);

/// Copy of `mesh` with kappas filled at every stencil-interior node.
HypersurfaceMesh with_fd_curvatures(const HypersurfaceMesh& mesh);

struct ConvexityVerdict {
  enum class Class { UniformlyWeaklyHC, WeaklyHCOnly, NotWeaklyHC };
  Class verdict = Class::UniformlyWeaklyHC;
  double kappa0 = 0.0;  // min kappa over all nodes (UniformlyWeaklyHC)
  std::optional<std::size_t> witness_node;
  std::size_t nodes_checked = 0;
};

std::string_view to_string(ConvexityVerdict::Class c);

inline constexpr double kKappaPoleWindow = 1e-9;

/// Classifies per-node kappa lists (nodes with an empty list are skipped).
ConvexityVerdict convexity_check(const std::vector<std::vector<double>>& kappas);
ConvexityVerdict convexity_check(const HypersurfaceMesh& mesh);

struct CurvatureReport {
  std::vector<std::vector<double>> kappas;
  std::vector<std::vector<double>> lambdas;  // lambda_from_kappa per kappa
  std::vector<std::optional<double>> mean_curvature;
  ConvexityVerdict convexity;
};

CurvatureReport curvature_report(const HypersurfaceMesh& mesh);

/// Largest |sorted e^{-2t} lambda_i - sorted lambda_from_kappa(kappa_i)| over
/// nodes with curvatures. `metric` must be the metric the mesh was built from.
struct DictionaryDiscrepancy {
  double max_discrepancy = 0.0;
  std::size_t worst_node = 0;
  std::size_t nodes = 0;
};
DictionaryDiscrepancy lambda_kappa_discrepancy(const ConformalMetric& metric,
                                               const HypersurfaceMesh& mesh_with_kappas);

/// Lengths of grid edges under the horospherical metric, by two routes.
struct HorosphericalEdgeLengths {
  std::vector<std::array<std::size_t, 2>> edges;
  std::vector<double> conformal;  // e^{(s_a + s_b)/2} * d_S(G_a, G_b)
  std::vector<double> pullback;   // sqrt <psi_b - psi_a, psi_b - psi_a>
};

HorosphericalEdgeLengths horospherical_metric_samples(const HypersurfaceMesh& mesh);

struct InjectivityProbe {
  bool collision = false;
  std::optional<std::array<std::size_t, 2>> pair;
};

inline constexpr double kGaussCollisionRadius = 1e-6;

/// Looks for nodes more than two stencil widths apart in the grid whose Gauss
/// images lie within `radius`. Reports the lowest index pair.
InjectivityProbe gauss_injectivity_probe(const HypersurfaceMesh& mesh,
                                         double radius = kGaussCollisionRadius);

/// Largest violation among |<phi,phi>+1|, |<eta,eta>-1|, |<phi,eta>|,
/// |<phi,psi>+1| and |psi - (phi - eta)| over the mesh.
double model_invariant_violation(const HypersurfaceMesh& mesh);

/// Max coordinate difference of phi and eta between two meshes on the same grid.
double max_node_difference(const HypersurfaceMesh& a, const HypersurfaceMesh& b);

}  // namespace horocorr
