#include "horocorr/sphere.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "horocorr/errors.hpp"

namespace horocorr {

SpherePoint::SpherePoint(const Vec& coords) {
  const double norm = coords.norm();
  if (!(norm > 0.0) || !std::isfinite(norm))
    throw MathDomainError("SpherePoint: cannot normalize a zero or non-finite vector");
  coords_ = coords / norm;
}

SpherePoint SpherePoint::basis(int ambient_dim, int axis) {
  Vec e = Vec::Zero(ambient_dim);
  e(axis) = 1.0;
  return SpherePoint(e);
}

SpherePoint SpherePoint::north(int n) { return basis(n + 1, n); }

SpherePoint SpherePoint::south(int n) { return north(n).antipode(); }

SpherePoint SpherePoint::antipode() const { return SpherePoint(Vec(-coords_)); }

double sphere_distance(const SpherePoint& a, const SpherePoint& b) {
  // atan2 form stays accurate for nearly equal and nearly antipodal points.
  const double cross = (a.coords() - a.dot(b) * b.coords()).norm();
  return std::atan2(cross, a.dot(b));
}

SpherePoint sphere_geodesic(const SpherePoint& x, const TangentVector& v, double t) {
  if (std::abs(v.norm() - 1.0) > 1e-10)
    throw MathDomainError("sphere_geodesic: direction is not a unit vector");
  return SpherePoint(Vec(std::cos(t) * x.coords() + std::sin(t) * v.vec));
}

Vec tangent_projection(const SpherePoint& x, const Vec& v) {
  return v - x.coords().dot(v) * x.coords();
}

Mat tangent_frame(const SpherePoint& x) {
  const auto dim = x.coords().size();
  std::vector<Eigen::Index> order(static_cast<std::size_t>(dim));
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    return std::abs(x[a]) < std::abs(x[b]);
  });

  Mat frame(dim, dim - 1);
  Eigen::Index filled = 0;
  for (Eigen::Index axis : order) {
    if (filled == dim - 1) break;
    Vec v = Vec::Zero(dim);
    v(axis) = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      v -= x.coords().dot(v) * x.coords();
      for (Eigen::Index k = 0; k < filled; ++k) v -= frame.col(k).dot(v) * frame.col(k);
    }
    const double norm = v.norm();
    if (norm < 1e-8) continue;
    frame.col(filled++) = v / norm;
  }
  return frame;
}

Mat complement_frame(const SpherePoint& axis) { return tangent_frame(axis); }

StereographicChart::StereographicChart(const SpherePoint& pole)
    : pole_(pole), frame_(complement_frame(pole)) {}

Vec StereographicChart::forward(const SpherePoint& x) const {
  const double denom = 1.0 - x.dot(pole_);
  if (denom <= 1e-300) {
    throw MathDomainError("stereographic chart: forward map evaluated at the chart pole");
  }
  return frame_.transpose() * x.coords() / denom;
}

SpherePoint StereographicChart::inverse(const Vec& u) const {
  if (u.size() != frame_.cols()) throw DimensionError("stereographic chart: wrong chart dimension");
  const double r2 = u.squaredNorm();
  Vec x = (2.0 * (frame_ * u) + (r2 - 1.0) * pole_.coords()) / (r2 + 1.0);
  return SpherePoint(x);
}

double StereographicChart::conformal_factor(const Vec& u) const {
  return 2.0 / (1.0 + u.squaredNorm());
}

Mat StereographicChart::jacobian(const Vec& u) const {
  // x(u) = (2 F u + (r^2 - 1) p) / (r^2 + 1)
  const double r2 = u.squaredNorm();
  const double d = r2 + 1.0;
  const Vec numer = 2.0 * (frame_ * u) + (r2 - 1.0) * pole_.coords();
  Mat jac(frame_.rows(), frame_.cols());
  for (Eigen::Index i = 0; i < frame_.cols(); ++i) {
    const Vec dnumer = 2.0 * frame_.col(i) + 2.0 * u(i) * pole_.coords();
    jac.col(i) = dnumer / d - numer * (2.0 * u(i)) / (d * d);
  }
  return jac;
}

std::vector<SpherePoint> meridian_points(const SpherePoint& axis, const SpherePoint& toward,
                                         const std::vector<double>& polar_angles) {
  Vec dir = tangent_projection(axis, toward.coords());
  if (dir.norm() < 1e-12)
    throw MathDomainError("meridian_points: direction parallel to the axis");
  dir.normalize();
  std::vector<SpherePoint> points;
  points.reserve(polar_angles.size());
  for (double theta : polar_angles)
    points.emplace_back(Vec(std::cos(theta) * axis.coords() + std::sin(theta) * dir));
  return points;
}

std::vector<double> shrinking_angles(double start, double end, double max_step,
                                     double geometric_from, double ratio) {
  if (!(end > 0.0) || !(end < start) || !(max_step > 0.0) || !(ratio > 0.0 && ratio < 1.0))
    throw ConfigError("shrinking_angles: invalid parameters");
  std::vector<double> angles{start};
  double theta = start;
  while (theta > end) {
    double next = theta > geometric_from ? std::max(theta - max_step, geometric_from)
                                         : theta * ratio;
    next = std::max(next, theta - max_step);
    angles.push_back(next);
    theta = next;
  }
  return angles;
}

}  // namespace horocorr
