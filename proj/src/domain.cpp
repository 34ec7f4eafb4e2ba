#include "horocorr/domain.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

#include "horocorr/errors.hpp"

namespace horocorr {

namespace {

constexpr double kPi = std::numbers::pi;

bool antipodal(const SpherePoint& a, const SpherePoint& b) { return a.dot(b) < -1.0 + 1e-12; }

}  // namespace

double polar_angle(const SpherePoint& axis, const SpherePoint& x) { return sphere_distance(axis, x); }

double mercator_from_angle(double theta) { return std::log(std::tan(0.5 * theta)); }

double angle_from_mercator(double s) { return 2.0 * std::atan(std::exp(s)); }

DomainSpec DomainSpec::full_sphere(int n) {
  if (n < 2) throw ConfigError("sphere dimension must be >= 2");
  DomainSpec d;
  d.kind = Kind::FullSphere;
  d.n = n;
  d.center = SpherePoint::north(n);
  return d;
}

DomainSpec DomainSpec::punctured(std::vector<SpherePoint> points, double margin) {
  if (points.empty()) throw ConfigError("punctured domain needs at least one puncture");
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j)
      if (sphere_distance(points[i], points[j]) < 1e-12)
        throw ConfigError("punctured domain: punctures must be distinct");
  if (margin < 0.0) throw ConfigError("domain margin must be >= 0");
  DomainSpec d;
  d.kind = Kind::PuncturedAtPoints;
  d.n = points.front().dim();
  d.center = points.front();
  d.punctures = std::move(points);
  d.margin = margin;
  return d;
}

DomainSpec DomainSpec::cap_complement(const SpherePoint& center, double angular_radius,
                                      double margin) {
  if (!(angular_radius > 0.0 && angular_radius < kPi))
    throw ConfigError("cap complement: angular radius must lie in (0, pi)");
  if (margin < 0.0) throw ConfigError("domain margin must be >= 0");
  DomainSpec d;
  d.kind = Kind::CapComplement;
  d.n = center.dim();
  d.center = center;
  d.angular_radius = angular_radius;
  d.margin = margin;
  return d;
}

DomainSpec DomainSpec::latitude_band(const SpherePoint& axis, double theta_min, double theta_max,
                                     double margin) {
  if (!(theta_min < theta_max) || theta_min < 0.0 || theta_max > kPi)
    throw ConfigError("latitude band: need 0 <= theta_min < theta_max <= pi");
  if (margin < 0.0) throw ConfigError("domain margin must be >= 0");
  DomainSpec d;
  d.kind = Kind::LatitudeBand;
  d.n = axis.dim();
  d.center = axis;
  d.theta_min = theta_min;
  d.theta_max = theta_max;
  d.margin = margin;
  return d;
}

double DomainSpec::boundary_distance(const SpherePoint& x) const {
  switch (kind) {
    case Kind::FullSphere: return std::numeric_limits<double>::infinity();
    case Kind::PuncturedAtPoints: {
      double best = std::numeric_limits<double>::infinity();
      for (const auto& p : punctures) best = std::min(best, sphere_distance(p, x));
      return best;
    }
    case Kind::CapComplement: return sphere_distance(center, x) - angular_radius;
    case Kind::LatitudeBand: {
      const double theta = polar_angle(center, x);
      // A band reaching a pole has no boundary there.
      double d = std::numeric_limits<double>::infinity();
      if (theta_min > 0.0) d = std::min(d, theta - theta_min);
      if (theta_max < kPi) d = std::min(d, theta_max - theta);
      return d;
    }
  }
  return 0.0;
}

std::string DomainSpec::describe() const {
  std::ostringstream out;
  switch (kind) {
    case Kind::FullSphere: out << "S^" << n; break;
    case Kind::PuncturedAtPoints: out << "S^" << n << " minus " << punctures.size() << " point(s)"; break;
    case Kind::CapComplement: out << "complement of a cap of radius " << angular_radius; break;
    case Kind::LatitudeBand: out << "band " << theta_min << " < theta < " << theta_max; break;
  }
  return out.str();
}

std::vector<int> ParameterGrid::multi_index(std::size_t node) const {
  std::vector<int> multi(sizes.size());
  for (std::size_t a = sizes.size(); a-- > 0;) {
    multi[a] = static_cast<int>(node % static_cast<std::size_t>(sizes[a]));
    node /= static_cast<std::size_t>(sizes[a]);
  }
  return multi;
}

std::size_t ParameterGrid::linear_index(const std::vector<int>& multi) const {
  std::size_t index = 0;
  for (std::size_t a = 0; a < sizes.size(); ++a)
    index = index * static_cast<std::size_t>(sizes[a]) + static_cast<std::size_t>(multi[a]);
  return index;
}

std::optional<std::size_t> ParameterGrid::neighbor(std::size_t node, int axis, int offset) const {
  auto multi = multi_index(node);
  const int size = sizes[static_cast<std::size_t>(axis)];
  int moved = multi[static_cast<std::size_t>(axis)] + offset;
  if (periodic[static_cast<std::size_t>(axis)]) {
    moved = ((moved % size) + size) % size;
  } else if (moved < 0 || moved >= size) {
    return std::nullopt;
  }
  multi[static_cast<std::size_t>(axis)] = moved;
  return linear_index(multi);
}

bool ParameterGrid::is_interior(std::size_t node, int half_width) const {
  const auto multi = multi_index(node);
  for (std::size_t a = 0; a < sizes.size(); ++a) {
    if (periodic[a]) {
      if (sizes[a] < 2 * half_width + 1) return false;
      continue;
    }
    if (multi[a] < half_width || multi[a] >= sizes[a] - half_width) return false;
  }
  return true;
}

int ParameterGrid::index_distance(std::size_t a, std::size_t b) const {
  const auto ma = multi_index(a);
  const auto mb = multi_index(b);
  int best = 0;
  for (std::size_t k = 0; k < sizes.size(); ++k) {
    int d = std::abs(ma[k] - mb[k]);
    if (periodic[k]) d = std::min(d, sizes[k] - d);
    best = std::max(best, d);
  }
  return best;
}

std::vector<std::array<std::size_t, 2>> ParameterGrid::edges() const {
  std::vector<std::array<std::size_t, 2>> out;
  for (std::size_t node = 0; node < node_count(); ++node) {
    for (int axis = 0; axis < static_cast<int>(sizes.size()); ++axis) {
      // A periodic axis of size 2 would list the same edge twice.
      if (periodic[static_cast<std::size_t>(axis)] && sizes[static_cast<std::size_t>(axis)] < 3)
        continue;
      if (auto next = neighbor(node, axis, 1)) out.push_back({node, *next});
    }
  }
  return out;
}

namespace {

void triangulate(ParameterGrid& grid) {
  if (grid.n != 2) return;
  const int rows = grid.sizes[0];
  const int cols = grid.sizes[1];
  const int col_cells = grid.periodic[1] ? cols : cols - 1;
  for (int i = 0; i + 1 < rows; ++i) {
    for (int j = 0; j < col_cells; ++j) {
      const int jn = (j + 1) % cols;
      const int a = i * cols + j;
      const int b = (i + 1) * cols + j;
      const int c = (i + 1) * cols + jn;
      const int d = i * cols + jn;
      grid.triangles.push_back({a, b, c});
      grid.triangles.push_back({a, c, d});
    }
  }
}

// Uniform Mercator samples covering [theta_lo, theta_hi].
std::vector<double> mercator_samples(double theta_lo, double theta_hi, int count,
                                     double& spacing) {
  const double s_lo = mercator_from_angle(theta_lo);
  const double s_hi = mercator_from_angle(theta_hi);
  spacing = (s_hi - s_lo) / (count - 1);
  std::vector<double> s(static_cast<std::size_t>(count));
  for (int k = 0; k < count; ++k) s[static_cast<std::size_t>(k)] = s_lo + spacing * k;
  s.back() = s_hi;
  return s;
}

Vec hyperspherical(const SpherePoint& axis, const Mat& frame, const std::vector<double>& polar,
                   double longitude, double theta_lo, double theta_hi) {
  // x = cos t0 a + sin t0 (cos t1 e1 + sin t1 (cos t2 e2 + ... (cos lon e_{n-1} + sin lon e_n)))
  const auto n = frame.cols();
  Vec x = Vec::Zero(axis.coords().size());
  double amplitude = 1.0;
  for (std::size_t k = 0; k < polar.size(); ++k) {
    double theta = angle_from_mercator(polar[k]);
    if (k == 0) theta = std::clamp(theta, theta_lo, theta_hi);
    const Vec dir = k == 0 ? Vec(axis.coords()) : Vec(frame.col(static_cast<Eigen::Index>(k - 1)));
    x += amplitude * std::cos(theta) * dir;
    amplitude *= std::sin(theta);
  }
  x += amplitude * (std::cos(longitude) * frame.col(n - 2) + std::sin(longitude) * frame.col(n - 1));
  return x;
}

ParameterGrid polar_grid(const SpherePoint& axis, double theta_lo, double theta_hi,
                         const std::vector<int>& resolution) {
  const int n = axis.dim();
  if (static_cast<int>(resolution.size()) != n)
    throw ConfigError("grid resolution needs " + std::to_string(n) + " entries for S^" +
                      std::to_string(n));
  for (int r : resolution)
    if (r < 4) throw ConfigError("grid resolution must be >= 4 per direction");
  if (!(theta_lo < theta_hi)) throw ConfigError("empty grid: domain is smaller than the margin");

  ParameterGrid grid;
  grid.kind = ParameterGrid::Kind::Polar;
  grid.n = n;
  grid.axis = axis;
  grid.frame = complement_frame(axis);
  grid.sizes.assign(resolution.rbegin(), resolution.rend());
  grid.periodic.assign(static_cast<std::size_t>(n), false);
  grid.periodic.back() = true;
  grid.spacing.resize(static_cast<std::size_t>(n));

  std::vector<std::vector<double>> axis_values(static_cast<std::size_t>(n));
  axis_values[0] = mercator_samples(theta_lo, theta_hi, grid.sizes[0], grid.spacing[0]);
  for (int k = 1; k + 1 < n; ++k) {
    // Intermediate polar angles cover (0, pi) minus half a cell at each pole.
    const double cut = 0.5 * std::numbers::pi / grid.sizes[static_cast<std::size_t>(k)];
    axis_values[static_cast<std::size_t>(k)] =
        mercator_samples(cut, std::numbers::pi - cut, grid.sizes[static_cast<std::size_t>(k)],
                         grid.spacing[static_cast<std::size_t>(k)]);
  }
  const int lon_count = grid.sizes.back();
  grid.spacing.back() = 2.0 * std::numbers::pi / lon_count;
  axis_values.back().resize(static_cast<std::size_t>(lon_count));
  for (int j = 0; j < lon_count; ++j) axis_values.back()[static_cast<std::size_t>(j)] = grid.spacing.back() * j;

  std::size_t total = 1;
  for (int s : grid.sizes) total *= static_cast<std::size_t>(s);
  grid.params.reserve(total);
  grid.nodes.reserve(total);
  for (std::size_t node = 0; node < total; ++node) {
    const auto multi = grid.multi_index(node);
    Vec param(n);
    std::vector<double> polar;
    for (int k = 0; k < n; ++k) {
      param(k) = axis_values[static_cast<std::size_t>(k)][static_cast<std::size_t>(multi[static_cast<std::size_t>(k)])];
      if (k + 1 < n) polar.push_back(param(k));
    }
    grid.params.push_back(param);
    grid.nodes.emplace_back(hyperspherical(axis, grid.frame, polar, param(n - 1), theta_lo, theta_hi));
  }
  triangulate(grid);
  return grid;
}

}  // namespace

ParameterGrid build_grid(const DomainSpec& domain, const std::vector<int>& resolution,
                         double margin) {
  if (margin < 0.0) throw ConfigError("grid margin must be >= 0");
  const int polar_count = resolution.empty() ? 4 : resolution.back();
  const double pole_cut = 0.5 * kPi / std::max(polar_count, 1);

  switch (domain.kind) {
    case DomainSpec::Kind::FullSphere: {
      const double cut = std::max(margin, pole_cut);
      return polar_grid(domain.center, cut, kPi - cut, resolution);
    }
    case DomainSpec::Kind::PuncturedAtPoints: {
      const auto& pts = domain.punctures;
      const double near = std::max(margin, pole_cut);
      if (pts.size() == 1) return polar_grid(pts[0], near, kPi - near, resolution);
      if (pts.size() == 2 && antipodal(pts[0], pts[1]))
        return polar_grid(pts[0], near, kPi - near, resolution);
      throw ConfigError(
          "grid generation supports one puncture or two antipodal punctures");
    }
    case DomainSpec::Kind::CapComplement: {
      const double cut = std::max(margin, pole_cut);
      return polar_grid(domain.center, domain.angular_radius + margin, kPi - cut, resolution);
    }
    case DomainSpec::Kind::LatitudeBand: {
      double lo = domain.theta_min + margin;
      double hi = domain.theta_max - margin;
      if (domain.theta_min == 0.0) lo = std::max(lo, pole_cut);
      if (domain.theta_max == kPi) hi = std::min(hi, kPi - pole_cut);
      return polar_grid(domain.center, lo, hi, resolution);
    }
  }
  throw ConfigError("unknown domain kind");
}

ParameterGrid build_chart_grid(const SpherePoint& pole, int points_per_axis, double half_width) {
  if (points_per_axis < 4) throw ConfigError("grid resolution must be >= 4 per direction");
  if (!(half_width > 0.0)) throw ConfigError("chart grid half width must be positive");
  const StereographicChart chart(pole);
  ParameterGrid grid;
  grid.kind = ParameterGrid::Kind::ChartSquare;
  grid.n = pole.dim();
  grid.axis = pole;
  grid.frame = chart.frame();
  grid.sizes.assign(static_cast<std::size_t>(grid.n), points_per_axis);
  grid.periodic.assign(static_cast<std::size_t>(grid.n), false);
  const double h = 2.0 * half_width / (points_per_axis - 1);
  grid.spacing.assign(static_cast<std::size_t>(grid.n), h);
  std::size_t total = 1;
  for (int s : grid.sizes) total *= static_cast<std::size_t>(s);
  for (std::size_t node = 0; node < total; ++node) {
    const auto multi = grid.multi_index(node);
    Vec u(grid.n);
    for (int k = 0; k < grid.n; ++k) u(k) = -half_width + h * multi[static_cast<std::size_t>(k)];
    grid.params.push_back(u);
    grid.nodes.push_back(chart.inverse(u));
  }
  triangulate(grid);
  return grid;
}

}  // namespace horocorr
