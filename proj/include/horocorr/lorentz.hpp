#pragma once

#include <Eigen/Dense>
#include <string_view>

#include "horocorr/linalg.hpp"

namespace horocorr {

/// Default tolerance for membership in the hyperboloid, de Sitter and null-cone
/// models.
inline constexpr double kModelTolerance = 1e-9;

/// A point of Minkowski space R^{1,n+1}, coordinates (x0, x1, ..., x_{n+1}).
class MinkowskiVector {
 public:
  MinkowskiVector() = default;
  explicit MinkowskiVector(Vec coords);

  /// (time, space...) with space of length n+1.
  static MinkowskiVector from_parts(double time, const Vec& space);

  const Vec& coords() const { return coords_; }
  Eigen::Index size() const { return coords_.size(); }
  /// Hyperbolic dimension n + 1 of the ambient model this vector lives in.
  int spatial_dim() const { return static_cast<int>(coords_.size()) - 1; }
  double time() const { return coords_(0); }
  Vec space() const { return coords_.tail(coords_.size() - 1); }
  double operator[](Eigen::Index i) const { return coords_(i); }

  MinkowskiVector operator+(const MinkowskiVector& o) const;
  MinkowskiVector operator-(const MinkowskiVector& o) const;
  MinkowskiVector operator*(double s) const;
  friend MinkowskiVector operator*(double s, const MinkowskiVector& v) { return v * s; }

 private:
  Vec coords_;
};

/// A point of the Poincare ball model, Euclidean norm < 1.
struct BallPoint {
  Vec coords;
  double norm() const { return coords.norm(); }
};

enum class ModelClass { Hyperboloid, DeSitter, NullConePlus, Other };

std::string_view to_string(ModelClass c);

/// -u0 v0 + sum_{i>=1} ui vi.
double mink_inner(const MinkowskiVector& u, const MinkowskiVector& v);

/// Hyperboloid, then de Sitter, then the future null cone; first match wins.
ModelClass classify(const MinkowskiVector& v, double tol = kModelTolerance);

/// (x1, ..., x_{n+1}) / (1 + x0). Throws MathDomainError off the hyperboloid.
BallPoint to_poincare_ball(const MinkowskiVector& p, double tol = kModelTolerance);

/// arccosh(-<p, q>), with the argument clamped to [1, inf).
double hyperbolic_distance(const MinkowskiVector& p, const MinkowskiVector& q,
                           double tol = kModelTolerance);

/// The base point O = (1, 0, ..., 0) of H^{n+1}; `space_dim` = n + 1.
MinkowskiVector hyperboloid_origin(int space_dim);

}  // namespace horocorr
