#include "horocorr/lorentz.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <utility>

#include "horocorr/errors.hpp"

namespace horocorr {

MinkowskiVector::MinkowskiVector(Vec coords) : coords_(std::move(coords)) {}

MinkowskiVector MinkowskiVector::from_parts(double time, const Vec& space) {
  Vec c(space.size() + 1);
  c(0) = time;
  c.tail(space.size()) = space;
  return MinkowskiVector(std::move(c));
}

MinkowskiVector MinkowskiVector::operator+(const MinkowskiVector& o) const {
  if (size() != o.size()) throw DimensionError("MinkowskiVector: dimension mismatch");
  return MinkowskiVector(coords_ + o.coords_);
}

MinkowskiVector MinkowskiVector::operator-(const MinkowskiVector& o) const {
  if (size() != o.size()) throw DimensionError("MinkowskiVector: dimension mismatch");
  return MinkowskiVector(coords_ - o.coords_);
}

MinkowskiVector MinkowskiVector::operator*(double s) const { return MinkowskiVector(coords_ * s); }

std::string_view to_string(ModelClass c) {
  switch (c) {
    case ModelClass::Hyperboloid: return "Hyperboloid";
    case ModelClass::DeSitter: return "DeSitter";
    case ModelClass::NullConePlus: return "NullConePlus";
    case ModelClass::Other: return "Other";
  }
  return "Other";
}

double mink_inner(const MinkowskiVector& u, const MinkowskiVector& v) {
  if (u.size() != v.size())
    throw DimensionError("mink_inner: dimension mismatch (" + std::to_string(u.size()) +
                         " vs " + std::to_string(v.size()) + ")");
  // Extended accumulation: model checks on far-out points cancel large terms.
  long double sum = -static_cast<long double>(u[0]) * v[0];
  for (Eigen::Index i = 1; i < u.size(); ++i) sum += static_cast<long double>(u[i]) * v[i];
  return static_cast<double>(sum);
}

ModelClass classify(const MinkowskiVector& v, double tol) {
  const double q = mink_inner(v, v);
  if (std::abs(q + 1.0) <= tol && v.time() > 0.0) return ModelClass::Hyperboloid;
  if (std::abs(q - 1.0) <= tol) return ModelClass::DeSitter;
  if (std::abs(q) <= tol && v.time() > 0.0) return ModelClass::NullConePlus;
  return ModelClass::Other;
}

namespace {

void require_hyperboloid(const MinkowskiVector& p, double tol, const char* op) {
  if (classify(p, tol) != ModelClass::Hyperboloid) {
    std::ostringstream msg;
    msg << op << ": point not on the hyperboloid (<p,p> = " << mink_inner(p, p)
        << ", x0 = " << p.time() << ")";
    throw MathDomainError(msg.str());
  }
}

}  // namespace

BallPoint to_poincare_ball(const MinkowskiVector& p, double tol) {
  require_hyperboloid(p, tol, "to_poincare_ball");
  return BallPoint{p.space() / (1.0 + p.time())};
}

double hyperbolic_distance(const MinkowskiVector& p, const MinkowskiVector& q, double tol) {
  require_hyperboloid(p, tol, "hyperbolic_distance");
  require_hyperboloid(q, tol, "hyperbolic_distance");
  return std::acosh(std::max(1.0, -mink_inner(p, q)));
}

MinkowskiVector hyperboloid_origin(int space_dim) {
  Vec c = Vec::Zero(space_dim + 1);
  c(0) = 1.0;
  return MinkowskiVector(std::move(c));
}

}  // namespace horocorr
