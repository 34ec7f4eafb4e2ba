#include "horocorr/conformal.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "horocorr/errors.hpp"
#include "horocorr/parallel.hpp"

namespace horocorr {

namespace {

std::string point_text(const SpherePoint& x) {
  std::ostringstream out;
  out.precision(6);
  out << "(";
  for (Eigen::Index i = 0; i < x.coords().size(); ++i) out << (i ? ", " : "") << x[i];
  out << ")";
  return out.str();
}

void require_inside(const ConformalMetric& metric, const SpherePoint& x, const char* op) {
  if (x.dim() != metric.n()) throw DimensionError(std::string(op) + ": point has wrong dimension");
  if (!metric.domain.contains(x))
    throw MathDomainError(std::string(op) + ": point " + point_text(x) + " is outside the domain");
}

}  // namespace

PTensorSample p_tensor(const ConformalMetric& metric, const SpherePoint& x) {
  return p_tensor(metric, x, tangent_frame(x));
}

PTensorSample p_tensor(const ConformalMetric& metric, const SpherePoint& x, const Mat& frame) {
  require_inside(metric, x, "p_tensor");
  const double rho = metric.rho.value(x);
  const Vec grad = frame.transpose() * metric.rho.gradient(x).vec;
  const Mat hess = metric.rho.hessian(x, frame);
  const auto n = frame.cols();

  PTensorSample sample;
  sample.point = x;
  sample.frame = frame;
  sample.matrix = -hess + grad * grad.transpose() -
                  0.5 * (grad.squaredNorm() - 1.0) * Mat::Identity(n, n);
  sample.round_eigenvalues = symmetric_eigenvalues(sample.matrix);
  const double scale = std::exp(-2.0 * rho);
  sample.lambdas.reserve(sample.round_eigenvalues.size());
  for (double v : sample.round_eigenvalues) sample.lambdas.push_back(scale * v);
  return sample;
}

std::vector<double> p_eigenvalues_rescaled(const ConformalMetric& metric, const SpherePoint& x,
                                           double t) {
  auto lambdas = p_tensor(metric, x).lambdas;
  const double scale = std::exp(-2.0 * t);
  for (double& v : lambdas) v *= scale;
  return lambdas;
}

double beta(const ConformalMetric& metric, const SpherePoint& x) {
  require_inside(metric, x, "beta");
  return std::exp(2.0 * metric.rho.value(x)) + metric.rho.gradient(x).vec.squaredNorm();
}

RealizabilityReport realizability_scan(const ConformalMetric& metric, const ParameterGrid& grid,
                                       double bound, BoundSide side) {
  if (grid.node_count() == 0) throw ConfigError("realizability_scan: empty grid");
  std::vector<std::vector<double>> lambdas(grid.node_count());
  parallel_for(grid.node_count(), [&](std::size_t i) {
    lambdas[i] = p_tensor(metric, grid.nodes[i]).lambdas;
  });

  RealizabilityReport report;
  report.bound_used = bound;
  report.side = side;
  report.sample_count = grid.node_count();
  report.min_lambda = std::numeric_limits<double>::infinity();
  report.max_lambda = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < lambdas.size(); ++i) {
    const double lo = lambdas[i].front();
    const double hi = lambdas[i].back();
    report.min_lambda = std::min(report.min_lambda, lo);
    report.max_lambda = std::max(report.max_lambda, hi);
    report.sup_abs_lambda = std::max({report.sup_abs_lambda, std::abs(lo), std::abs(hi)});
    const bool exceeds = side == BoundSide::TwoSided ? std::max(std::abs(lo), std::abs(hi)) > bound
                                                     : hi > bound;
    if (exceeds && !report.witness_node) {
      report.witness_node = i;
      report.witness_point = grid.nodes[i];
    }
  }
  report.within_bound = !report.witness_node.has_value();
  const double extreme =
      side == BoundSide::TwoSided ? report.sup_abs_lambda : report.max_lambda;
  report.at_bound = std::abs(extreme - bound) <= 1e-12;
  return report;
}

DivergenceScan boundary_divergence_scan(const ConformalMetric& metric,
                                        const SpherePoint& boundary_point,
                                        const std::vector<SpherePoint>& approach,
                                        double threshold) {
  DivergenceScan scan;
  scan.threshold = threshold;
  if (!metric.domain.has_boundary()) {
    scan.note = "domain has no boundary";
    return scan;
  }
  if (std::abs(metric.domain.boundary_distance(boundary_point)) > 1e-9)
    throw ConfigError("boundary_divergence_scan: target point is not on the domain boundary");
  scan.betas.reserve(approach.size());
  for (const auto& x : approach) {
    if (!metric.domain.contains(x))
      throw MathDomainError("boundary_divergence_scan: approach point " + point_text(x) +
                            " is outside the domain");
    scan.betas.push_back(beta(metric, x));
  }
  if (scan.betas.size() < 2) {
    scan.note = "approach sequence too short";
    return scan;
  }
  const std::size_t tail_start = scan.betas.size() / 2;
  bool increasing = true;
  for (std::size_t i = tail_start + 1; i < scan.betas.size(); ++i)
    increasing = increasing && scan.betas[i] > scan.betas[i - 1];
  const bool above = scan.betas.back() > threshold;
  if (increasing && above) {
    scan.verdict = DivergenceScan::Verdict::Diverging;
    scan.note = "tail strictly increasing and above threshold";
  } else {
    scan.note = !increasing ? "tail not strictly increasing" : "final value below threshold";
  }
  return scan;
}

std::vector<double> completeness_probe(const ConformalMetric& metric,
                                       const std::vector<SpherePoint>& curve) {
  std::vector<double> sums;
  if (curve.size() < 2) return sums;
  sums.reserve(curve.size() - 1);
  double total = 0.0;
  for (std::size_t i = 0; i + 1 < curve.size(); ++i) {
    const auto& a = curve[i];
    const auto& b = curve[i + 1];
    if (!metric.domain.contains(a) || !metric.domain.contains(b))
      throw MathDomainError("completeness_probe: curve leaves the domain");
    const double length = sphere_distance(a, b);
    if (length >= 0.1)
      throw ConfigError("completeness_probe: consecutive points must be closer than 0.1 rad");
    const SpherePoint mid(Vec(a.coords() + b.coords()));
    total += std::exp(metric.rho.value(mid)) * length;
    sums.push_back(total);
  }
  return sums;
}

GradientBoundConstants constants_for(double C, double C0, int n, double A) {
  GradientBoundConstants k;
  k.C = C;
  k.C0 = C0;
  k.K = std::max(1.0, std::sqrt(static_cast<double>(n)) / 2.0);
  k.A = A;
  const double root = std::sqrt(A);
  const double angle = std::atan(C / root);
  k.delta = (std::numbers::pi / 2.0 - angle) / (2.0 * root);
  k.Ybar = root * std::tan(std::numbers::pi / 4.0 + 0.5 * angle);
  return k;
}

namespace {

bool admissible(const GradientBoundConstants& k) {
  return k.C0 * k.C * std::exp(2.0 * k.K * k.delta * k.Ybar) + 1.0 <= k.A;
}

}  // namespace

GradientBoundConstants gradient_bound_constants(double C, double C0, int n) {
  if (!(C > 0.0) || !(C0 > 0.0)) throw ConfigError("gradient_bound_constants: need C > 0 and C0 > 0");
  if (n < 2) throw ConfigError("gradient_bound_constants: need n >= 2");
  constexpr double kCap = 1e300;

  // C0 C e^{2K delta Ybar} + 1 - A is strictly decreasing in A, and positive
  // at A = C0 C + 1.
  double lo = C0 * C + 1.0;
  double hi = 2.0 * lo;
  while (!admissible(constants_for(C, C0, n, hi))) {
    lo = hi;
    hi *= 2.0;
    if (!(hi <= kCap)) throw MathDomainError("gradient_bound_constants: no admissible A below 1e300");
  }
  while ((hi - lo) > 1e-6 * hi) {
    const double mid = 0.5 * (lo + hi);
    if (admissible(constants_for(C, C0, n, mid))) hi = mid;
    else lo = mid;
  }
  return constants_for(C, C0, n, hi);
}

double ode_blow_up_time(double A, double y0) {
  if (!(A > 0.0)) throw ConfigError("ode_comparison_solution: need A > 0");
  const double root = std::sqrt(A);
  return (std::numbers::pi / 2.0 - std::atan(y0 / root)) / root;
}

double ode_comparison_solution(double A, double y0, double t) {
  if (!(A > 0.0)) throw ConfigError("ode_comparison_solution: need A > 0");
  const double root = std::sqrt(A);
  const double phase = root * t + std::atan(y0 / root);
  if (phase >= std::numbers::pi / 2.0)
    throw MathDomainError("ode_comparison_solution: blow-up time reached");
  return root * std::tan(phase);
}

}  // namespace horocorr
