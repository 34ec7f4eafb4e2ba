#pragma once

#include <Eigen/Dense>
#include <string>
#include <vector>

#include "horocorr/correspondence.hpp"
#include "horocorr/intersect.hpp"

namespace horocorr {

/// A machine-checkable property a catalog metric is known to have.
///
/// kinds:
///   lambda_constant       lambda_i(x) equal `values` (ascending) everywhere
///   round_p_scalar        P = values[0] * g_{S^n} in the round frame
///   kappa_dictionary      FD kappa_i = kappa_from_lambda(e^{-2t} values_i)
///   kappa_geodesic_sphere FD kappa_i = coth(values[0] + t)
///   mean_curvature        FD mean curvature = values[0]
///   horosphere_constancy  <phi, (1, p)> constant over nodes, p = values
///   rotational_symmetry   surfaces symmetric about the axis `values`
///   beta_diverges         beta -> infinity toward each boundary point in
///                         `values` (consecutive blocks of n + 1)
struct Expectation {
  std::string name;
  std::string kind;
  std::vector<double> values;
  double tolerance = 0.0;
  std::string description;
};

struct CatalogEntry {
  std::string id;
  ConformalMetric metric;
  std::vector<Expectation> expectations;
  double default_margin = 0.0;
};

/// rho = c on the full sphere: geodesic spheres about O of radius c + t.
CatalogEntry make_constant(double c, int n = 2);

/// rho(x) = ln((1 + |u|^2) / 2) with u the stereographic coordinate from p,
/// i.e. rho = -ln(1 - x.p): the flat metric on S^n minus p. Horospheres.
CatalogEntry make_flat_punctured(const SpherePoint& p);

/// rho = -ln sin(theta), theta the angle from p, on S^n minus {p, q = -p}:
/// the flat cylinder. Equidistant tubes about the geodesic from p to q.
CatalogEntry make_cylindric(const SpherePoint& p, const SpherePoint& q);

/// rho = a (x . e) on the full sphere.
CatalogEntry make_height(double a, const SpherePoint& e);

/// Looks up "constant", "constant:<c>", "flat-punctured", "cylindric",
/// "height:<a>". Punctures and axes default to the north pole.
CatalogEntry catalog_entry(const std::string& id, int n = 2);

/// Ids listed by `horocorr catalog list`.
std::vector<std::string> catalog_ids();

/// Default grid resolution for an entry (longitudes first).
std::vector<int> default_resolution(int n);

/// Horosphere with point at infinity p at signed distance s from O, with
/// constant Gauss map p and support s, parametrized over a chart square of
/// half width `half_width` around -p.
HypersurfaceMesh make_horosphere_reference(const SpherePoint& p, double s,
                                           int points_per_axis = 33, double half_width = 1.0);

/// Closed ribbon of height 2 * half_height along the planar figure-eight
/// (a sin tau, b sin tau cos tau, 0). Its two branches cross along the
/// vertical segment [crossing_low, crossing_high] through the origin.
struct SelfIntersectingFixture {
  BallMesh mesh;
  Eigen::Vector3d crossing_low;
  Eigen::Vector3d crossing_high;
  /// Distance from p to the designed crossing segment.
  double distance_to_crossing(const Eigen::Vector3d& p) const;
};

SelfIntersectingFixture make_selfintersecting_fixture(bool with_crossing = true,
                                                      int segments = 64);

}  // namespace horocorr
