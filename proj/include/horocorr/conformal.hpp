#pragma once

#include <optional>
#include <string>
#include <vector>

#include "horocorr/domain.hpp"
#include "horocorr/scalar_field.hpp"

namespace horocorr {

/// The conformal metric e^{2 rho} g_{S^n} on a domain of S^n.
struct ConformalMetric {
  DomainSpec domain;
  ScalarField rho;
  std::string label;

  int n() const { return domain.n; }
};

/// The symmetric 2-tensor -Hess rho + d rho (x) d rho - (|grad rho|^2 - 1)/2 g
/// at one point.
struct PTensorSample {
  SpherePoint point;
  Mat frame;   // orthonormal frame of T_x S^n (round metric) used for `matrix`
  Mat matrix;  // components in `frame`
  /// Eigenvalues of `matrix`, i.e. relative to the round metric, ascending.
  std::vector<double> round_eigenvalues;
  /// Eigenvalues relative to e^{2 rho} g (= e^{-2 rho} round_eigenvalues),
  /// ascending. These are the lambda_i matched against principal curvatures.
  std::vector<double> lambdas;
};

PTensorSample p_tensor(const ConformalMetric& metric, const SpherePoint& x);
PTensorSample p_tensor(const ConformalMetric& metric, const SpherePoint& x, const Mat& frame);

/// Eigenvalues of the tensor for the rescaled metric e^{2t} e^{2 rho} g:
/// e^{-2t} lambda_i, ascending.
std::vector<double> p_eigenvalues_rescaled(const ConformalMetric& metric, const SpherePoint& x,
                                           double t);

/// e^{2 rho} + |grad rho|^2.
double beta(const ConformalMetric& metric, const SpherePoint& x);

enum class BoundSide { TwoSided, UpperOnly };

struct RealizabilityReport {
  double sup_abs_lambda = 0.0;
  double min_lambda = 0.0;
  double max_lambda = 0.0;
  std::size_t sample_count = 0;
  double bound_used = 0.0;
  BoundSide side = BoundSide::TwoSided;
  bool within_bound = true;
  /// Set when the extreme value sits on the bound itself (within 1e-12).
  bool at_bound = false;
  std::optional<std::size_t> witness_node;
  std::optional<SpherePoint> witness_point;
};

/// Extremes of lambda_i over the grid; exceeds when |lambda| > bound (two
/// sided) or lambda > bound (upper only). The witness is the lowest node index.
RealizabilityReport realizability_scan(const ConformalMetric& metric, const ParameterGrid& grid,
                                       double bound, BoundSide side = BoundSide::TwoSided);

inline constexpr double kDefaultBetaThreshold = 1e6;

struct DivergenceScan {
  enum class Verdict { Diverging, Inconclusive };
  std::vector<double> betas;
  Verdict verdict = Verdict::Inconclusive;
  double threshold = kDefaultBetaThreshold;
  std::string note;
};

/// beta along `approach`, a sequence in the domain tending to
/// `boundary_point`. Diverging when the second half of the sequence is
/// strictly increasing and the last value exceeds `threshold`.
DivergenceScan boundary_divergence_scan(const ConformalMetric& metric,
                                        const SpherePoint& boundary_point,
                                        const std::vector<SpherePoint>& approach,
                                        double threshold = kDefaultBetaThreshold);

/// Partial sums of e^{rho(midpoint)} * (segment length) along a curve whose
/// consecutive points are closer than 0.1 rad.
std::vector<double> completeness_probe(const ConformalMetric& metric,
                                       const std::vector<SpherePoint>& curve);

/// Constants of the gradient estimate near the boundary.
struct GradientBoundConstants {
  double C = 0.0;      // bound for beta at the base points
  double C0 = 0.0;     // bound for |P|
  double K = 0.0;      // max{1, sqrt(n)/2}
  double A = 0.0;
  double delta = 0.0;  // (pi/2 - arctan(C/sqrt A)) / (2 sqrt A)
  double Ybar = 0.0;   // sqrt A tan(pi/4 + arctan(C/sqrt A)/2)
};

/// delta and Ybar for a given A.
GradientBoundConstants constants_for(double C, double C0, int n, double A);

/// Searches the smallest A (doubling, then bisection to relative width 1e-6)
/// with C0 C e^{2 K delta Ybar} + 1 <= A. Throws MathDomainError if A would
/// exceed 1e300.
GradientBoundConstants gradient_bound_constants(double C, double C0, int n);

/// Solution of Y' = Y^2 + A, Y(0) = y0: sqrt A tan(sqrt A t + arctan(y0 / sqrt A)).
double ode_comparison_solution(double A, double y0, double t);
/// First t where the solution above blows up.
double ode_blow_up_time(double A, double y0);

}  // namespace horocorr
