#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "horocorr/sphere.hpp"

namespace horocorr {

/// A domain Omega of S^n together with a safety margin from its boundary.
struct DomainSpec {
  enum class Kind { FullSphere, PuncturedAtPoints, CapComplement, LatitudeBand };

  Kind kind = Kind::FullSphere;
  int n = 2;
  std::vector<SpherePoint> punctures;  // PuncturedAtPoints
  SpherePoint center;                  // CapComplement center, LatitudeBand axis
  double angular_radius = 0.0;         // CapComplement
  double theta_min = 0.0;              // LatitudeBand
  double theta_max = 0.0;
  double margin = 0.0;

  static DomainSpec full_sphere(int n);
  static DomainSpec punctured(std::vector<SpherePoint> points, double margin);
  static DomainSpec cap_complement(const SpherePoint& center, double angular_radius,
                                   double margin);
  static DomainSpec latitude_band(const SpherePoint& axis, double theta_min, double theta_max,
                                  double margin);

  bool has_boundary() const { return kind != Kind::FullSphere; }
  /// Spherical distance to the boundary; +inf on the full sphere.
  double boundary_distance(const SpherePoint& x) const;
  /// Membership in the open domain (margin ignored).
  bool contains(const SpherePoint& x) const { return boundary_distance(x) > 0.0; }
  std::string describe() const;
};

/// Structured sample of a domain. Axes are ordered (polar, [intermediate
/// polar angles], longitude) for polar grids and (u_1..u_n) for chart grids.
/// Polar angles are sampled uniformly in the Mercator coordinate
/// s = ln tan(theta / 2), which keeps cells isotropic near the poles.
struct ParameterGrid {
  enum class Kind { Polar, ChartSquare };

  Kind kind = Kind::Polar;
  int n = 2;
  SpherePoint axis;  // polar axis, or chart pole
  Mat frame;         // orthonormal complement of `axis`
  std::vector<int> sizes;
  std::vector<bool> periodic;
  std::vector<double> spacing;
  std::vector<Vec> params;
  std::vector<SpherePoint> nodes;
  std::vector<std::array<int, 3>> triangles;  // n == 2 only

  std::size_t node_count() const { return nodes.size(); }
  std::vector<int> multi_index(std::size_t node) const;
  std::size_t linear_index(const std::vector<int>& multi) const;
  /// Neighbor `offset` steps along `axis`, wrapping periodic axes.
  std::optional<std::size_t> neighbor(std::size_t node, int axis, int offset) const;
  /// True when every axis has `half_width` neighbors on both sides.
  bool is_interior(std::size_t node, int half_width) const;
  /// Max over axes of the index distance (periodic axes wrap).
  int index_distance(std::size_t a, std::size_t b) const;
  /// Grid edges (a, a+1 along each axis), a < count.
  std::vector<std::array<std::size_t, 2>> edges() const;
};

/// Builds a grid over `domain` keeping at least `margin` from the boundary.
/// `resolution` lists point counts from the longitude axis down to the polar
/// axis (e.g. {64, 32} = 64 longitudes x 32 latitudes for n = 2); every entry
/// must be >= 4.
ParameterGrid build_grid(const DomainSpec& domain, const std::vector<int>& resolution,
                         double margin);
inline ParameterGrid build_grid(const DomainSpec& domain, const std::vector<int>& resolution) {
  return build_grid(domain, resolution, domain.margin);
}

/// Square grid [-half_width, half_width]^n in the stereographic chart from
/// `pole` (nodes cluster around the antipode of the pole).
ParameterGrid build_chart_grid(const SpherePoint& pole, int points_per_axis, double half_width);

/// Polar angle of x about `axis`.
double polar_angle(const SpherePoint& axis, const SpherePoint& x);

/// Mercator coordinate s = ln tan(theta / 2) and its inverse.
double mercator_from_angle(double theta);
double angle_from_mercator(double s);

}  // namespace horocorr
