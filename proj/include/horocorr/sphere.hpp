#pragma once

#include <vector>

#include "horocorr/linalg.hpp"

namespace horocorr {

/// A unit vector of R^{n+1}, i.e. a point of the round sphere S^n.
class SpherePoint {
 public:
  SpherePoint() = default;
  /// Normalizes `coords`; throws MathDomainError for a zero or non-finite vector.
  explicit SpherePoint(const Vec& coords);

  const Vec& coords() const { return coords_; }
  /// Intrinsic dimension n.
  int dim() const { return static_cast<int>(coords_.size()) - 1; }
  double operator[](Eigen::Index i) const { return coords_(i); }
  double dot(const SpherePoint& o) const { return coords_.dot(o.coords_); }

  /// Unit basis vector e_axis of R^{ambient_dim}.
  static SpherePoint basis(int ambient_dim, int axis);
  /// The last basis vector of R^{n+1}.
  static SpherePoint north(int n);
  static SpherePoint south(int n);

  SpherePoint antipode() const;

 private:
  Vec coords_;
};

/// An ambient vector tangent to the sphere at `base`.
struct TangentVector {
  SpherePoint base;
  Vec vec;

  double norm() const { return vec.norm(); }
};

/// Great-circle distance.
double sphere_distance(const SpherePoint& a, const SpherePoint& b);

/// cos(t) x + sin(t) v for unit tangent v, renormalized.
SpherePoint sphere_geodesic(const SpherePoint& x, const TangentVector& v, double t);

/// Projects an ambient vector onto T_x S^n.
Vec tangent_projection(const SpherePoint& x, const Vec& v);

/// Orthonormal basis of T_x S^n as the columns of an (n+1) x n matrix.
/// Deterministic in x.
Mat tangent_frame(const SpherePoint& x);

/// Orthonormal frame of the complement of `axis`, columns e_1..e_n.
Mat complement_frame(const SpherePoint& axis);

/// Stereographic projection from `pole` onto R^n, coordinates taken in a fixed
/// orthonormal frame of the tangent space at the pole. The antipode maps to 0.
class StereographicChart {
 public:
  explicit StereographicChart(const SpherePoint& pole);

  const SpherePoint& pole() const { return pole_; }
  const Mat& frame() const { return frame_; }
  int dim() const { return pole_.dim(); }

  /// Throws MathDomainError at the pole.
  Vec forward(const SpherePoint& x) const;
  SpherePoint inverse(const Vec& u) const;
  /// The pullback of the round metric is conformal_factor(u)^2 |du|^2.
  double conformal_factor(const Vec& u) const;
  /// Columns are d inverse / d u_i, ambient vectors tangent at inverse(u).
  Mat jacobian(const Vec& u) const;

 private:
  SpherePoint pole_;
  Mat frame_;
};

/// Points along the meridian from `axis` through `toward` at the given polar
/// angles (angle measured from `axis`).
std::vector<SpherePoint> meridian_points(const SpherePoint& axis, const SpherePoint& toward,
                                         const std::vector<double>& polar_angles);

/// Polar angles from `start` toward `end` (end < start, end > 0): uniform steps
/// of at most `max_step` while the angle exceeds `geometric_from`, then a
/// geometric decrease by `ratio` until `end` is passed.
std::vector<double> shrinking_angles(double start, double end, double max_step,
                                     double geometric_from, double ratio);

}  // namespace horocorr
