#include "horocorr/scalar_field.hpp"

#include <cmath>
#include <utility>

#include "horocorr/errors.hpp"

namespace horocorr {

namespace {

StereographicChart pick_chart(const SpherePoint& x, ChartChoice choice) {
  const int n = x.dim();
  switch (choice) {
    case ChartChoice::North: return StereographicChart(SpherePoint::north(n));
    case ChartChoice::South: return StereographicChart(SpherePoint::south(n));
    case ChartChoice::Auto: break;
  }
  // Use the chart whose pole is in the opposite hemisphere; the conformal
  // factor then stays in [1, 2].
  return x[n] <= 0.0 ? StereographicChart(SpherePoint::north(n))
                     : StereographicChart(SpherePoint::south(n));
}

struct ChartDifferences {
  Vec u;
  double factor = 0.0;
  double h = 0.0;
  Vec first;  // coordinate partials
};

double at(const std::function<double(const SpherePoint&)>& f, const StereographicChart& chart,
          const Vec& u) {
  return f(chart.inverse(u));
}

ChartDifferences first_differences(const std::function<double(const SpherePoint&)>& f,
                                   const StereographicChart& chart, const SpherePoint& x,
                                   double step) {
  if (!(step > 0.0)) throw ConfigError("finite-difference step must be positive");
  ChartDifferences d;
  d.u = chart.forward(x);
  d.factor = chart.conformal_factor(d.u);
  d.h = step / d.factor;
  const auto n = d.u.size();
  d.first.resize(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec plus = d.u, minus = d.u;
    plus(i) += d.h;
    minus(i) -= d.h;
    d.first(i) = (at(f, chart, plus) - at(f, chart, minus)) / (2.0 * d.h);
  }
  return d;
}

}  // namespace

TangentVector sph_gradient(const std::function<double(const SpherePoint&)>& f,
                           const SpherePoint& x, double step, ChartChoice choice) {
  const StereographicChart chart = pick_chart(x, choice);
  const ChartDifferences d = first_differences(f, chart, x, step);
  const Mat jac = chart.jacobian(d.u);
  // g^{ij} = delta_ij / c^2 for the conformal chart metric c^2 |du|^2.
  Vec grad = jac * d.first / (d.factor * d.factor);
  return TangentVector{x, tangent_projection(x, grad)};
}

Mat sph_hessian(const std::function<double(const SpherePoint&)>& f, const SpherePoint& x,
                const Mat& frame, double step, ChartChoice choice) {
  const StereographicChart chart = pick_chart(x, choice);
  const ChartDifferences d = first_differences(f, chart, x, step);
  const auto n = d.u.size();
  const double h = d.h;
  const double f0 = at(f, chart, d.u);

  Mat coord(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    Vec plus = d.u, minus = d.u;
    plus(i) += h;
    minus(i) -= h;
    coord(i, i) = (at(f, chart, plus) - 2.0 * f0 + at(f, chart, minus)) / (h * h);
    for (Eigen::Index j = i + 1; j < n; ++j) {
      Vec pp = d.u, pm = d.u, mp = d.u, mm = d.u;
      pp(i) += h; pp(j) += h;
      pm(i) += h; pm(j) -= h;
      mp(i) -= h; mp(j) += h;
      mm(i) -= h; mm(j) -= h;
      coord(i, j) = (at(f, chart, pp) - at(f, chart, pm) - at(f, chart, mp) + at(f, chart, mm)) /
                    (4.0 * h * h);
      coord(j, i) = coord(i, j);
    }
  }

  // Christoffel symbols of c^2 |du|^2 with w = ln c:
  //   Gamma^k_ij = delta_ik w_j + delta_jk w_i - delta_ij w_k.
  const Vec w = -2.0 * d.u / (1.0 + d.u.squaredNorm());
  const double w_dot_df = w.dot(d.first);
  Mat covariant = coord;
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      covariant(i, j) -= w(j) * d.first(i) + w(i) * d.first(j);
      if (i == j) covariant(i, j) += w_dot_df;
    }
  }

  // Coordinates of frame vectors: v_coord = J^T v / c^2.
  const Mat jac = chart.jacobian(d.u);
  const double c2 = d.factor * d.factor;
  const Mat to_coord = jac.transpose() * frame / c2;
  Mat result = to_coord.transpose() * covariant * to_coord;
  return 0.5 * (result + result.transpose());
}

ScalarField ScalarField::analytic(JetFn jet) {
  ScalarField field;
  field.mode_ = Mode::Analytic;
  field.jet_ = jet;
  field.value_ = [jet](const SpherePoint& x) { return jet(x.coords()).value; };
  return field;
}

ScalarField ScalarField::from_values(ValueFn value, double gradient_step, double hessian_step) {
  ScalarField field;
  field.mode_ = Mode::FiniteDifference;
  field.value_ = std::move(value);
  field.gradient_step_ = gradient_step;
  field.hessian_step_ = hessian_step;
  return field;
}

ScalarField ScalarField::finite_difference(double gradient_step, double hessian_step) const {
  return from_values(value_, gradient_step, hessian_step);
}

double ScalarField::value(const SpherePoint& x) const { return value_(x); }

TangentVector ScalarField::gradient(const SpherePoint& x) const {
  if (mode_ == Mode::FiniteDifference) return sph_gradient(value_, x, gradient_step_);
  const AmbientJet j = jet_(x.coords());
  return TangentVector{x, tangent_projection(x, j.gradient)};
}

Mat ScalarField::hessian(const SpherePoint& x, const Mat& frame) const {
  if (mode_ == Mode::FiniteDifference) return sph_hessian(value_, x, frame, hessian_step_);
  // Restricted to the sphere: D^2F(v, w) - (DF . x) <v, w>.
  const AmbientJet j = jet_(x.coords());
  const double radial = j.gradient.dot(x.coords());
  Mat h = frame.transpose() * j.hessian * frame;
  h -= radial * Mat::Identity(frame.cols(), frame.cols());
  return 0.5 * (h + h.transpose());
}

}  // namespace horocorr
