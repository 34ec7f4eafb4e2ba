#pragma once

#include <functional>

#include "horocorr/sphere.hpp"

namespace horocorr {

inline constexpr double kDefaultGradientStep = 1e-4;
inline constexpr double kDefaultHessianStep = 1e-3;

/// Value and Euclidean derivatives of an ambient extension F of a function on
/// the sphere, evaluated at y in R^{n+1}.
struct AmbientJet {
  double value = 0.0;
  Vec gradient;
  Mat hessian;
};

enum class ChartChoice { Auto, North, South };

/// Central-difference gradient of f at x computed in a stereographic chart and
/// returned as an ambient tangent vector. `step` is in radians.
TangentVector sph_gradient(const std::function<double(const SpherePoint&)>& f,
                           const SpherePoint& x, double step = kDefaultGradientStep,
                           ChartChoice chart = ChartChoice::Auto);

/// Covariant Hessian of f at x (chart second differences corrected by the
/// chart's Christoffel symbols), expressed in the orthonormal tangent frame
/// whose columns are `frame`.
Mat sph_hessian(const std::function<double(const SpherePoint&)>& f, const SpherePoint& x,
                const Mat& frame, double step = kDefaultHessianStep,
                ChartChoice chart = ChartChoice::Auto);

/// A scalar field on S^n with value, gradient and Hessian evaluators. Analytic
/// fields are given through an ambient extension; finite-difference fields
/// only need values.
class ScalarField {
 public:
  enum class Mode { Analytic, FiniteDifference };
  using ValueFn = std::function<double(const SpherePoint&)>;
  using JetFn = std::function<AmbientJet(const Vec&)>;

  static ScalarField analytic(JetFn jet);
  static ScalarField from_values(ValueFn value, double gradient_step = kDefaultGradientStep,
                                 double hessian_step = kDefaultHessianStep);

  /// Same values, derivatives replaced by finite differences.
  ScalarField finite_difference(double gradient_step = kDefaultGradientStep,
                                double hessian_step = kDefaultHessianStep) const;

  Mode mode() const { return mode_; }
  double gradient_step() const { return gradient_step_; }
  double hessian_step() const { return hessian_step_; }

  double value(const SpherePoint& x) const;
  TangentVector gradient(const SpherePoint& x) const;
  Mat hessian(const SpherePoint& x, const Mat& frame) const;
  Mat hessian(const SpherePoint& x) const { return hessian(x, tangent_frame(x)); }

 private:
  Mode mode_ = Mode::Analytic;
  ValueFn value_;
  JetFn jet_;
  double gradient_step_ = kDefaultGradientStep;
  double hessian_step_ = kDefaultHessianStep;
};

}  // namespace horocorr
