#include "horocorr/catalog.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <sstream>

#include "horocorr/errors.hpp"

namespace horocorr {

namespace {

std::vector<double> coords_of(const SpherePoint& p) {
  return std::vector<double>(p.coords().data(), p.coords().data() + p.coords().size());
}

double parse_number(const std::string& text, const std::string& id) {
  try {
    std::size_t used = 0;
    const double v = std::stod(text, &used);
    if (used != text.size()) throw std::invalid_argument(text);
    return v;
  } catch (const std::exception&) {
    throw ConfigError("catalog id '" + id + "': cannot parse parameter '" + text + "'");
  }
}

}  // namespace

CatalogEntry make_constant(double c, int n) {
  CatalogEntry entry;
  std::ostringstream id;
  id << "constant:" << c;
  entry.id = id.str();
  entry.metric.domain = DomainSpec::full_sphere(n);
  entry.metric.label = entry.id;
  const auto dim = static_cast<Eigen::Index>(n + 1);
  entry.metric.rho = ScalarField::analytic([c, dim](const Vec&) {
    return AmbientJet{c, Vec::Zero(dim), Mat::Zero(dim, dim)};
  });
  const double lambda = 0.5 * std::exp(-2.0 * c);
  entry.expectations = {
      {"p_round_half_identity", "round_p_scalar", {0.5}, 1e-12,
       "P = (1/2) g in the round frame for every constant"},
      {"lambda_constant", "lambda_constant", std::vector<double>(static_cast<std::size_t>(n), lambda), 1e-12,
       "lambda_i = e^{-2c}/2 relative to the conformal metric"},
      {"geodesic_sphere_curvature", "kappa_geodesic_sphere", {c}, 1e-3,
       "surface at time t is the geodesic sphere of radius c + t, kappa = coth(c + t)"},
  };
  return entry;
}

CatalogEntry make_flat_punctured(const SpherePoint& p) {
  CatalogEntry entry;
  entry.id = "flat-punctured";
  entry.default_margin = 0.1;
  entry.metric.domain = DomainSpec::punctured({p}, entry.default_margin);
  entry.metric.label = entry.id;
  const Vec axis = p.coords();
  entry.metric.rho = ScalarField::analytic([axis](const Vec& y) {
    const double gap = 1.0 - y.dot(axis);
    if (!(gap > 0.0)) throw MathDomainError("flat-punctured metric evaluated at its puncture");
    return AmbientJet{-std::log(gap), axis / gap, axis * axis.transpose() / (gap * gap)};
  });
  const int n = p.dim();
  std::vector<double> boundary = coords_of(p);
  entry.expectations = {
      {"p_tensor_zero", "lambda_constant", std::vector<double>(static_cast<std::size_t>(n), 0.0), 1e-9,
       "P = 0: the metric is flat"},
      {"horosphere_curvature", "kappa_dictionary", std::vector<double>(static_cast<std::size_t>(n), 0.0), 1e-3,
       "principal curvatures identically 1"},
      {"bernstein_mean_curvature", "mean_curvature", {1.0}, 1e-3, "mean curvature identically 1"},
      {"horosphere_constancy", "horosphere_constancy", coords_of(p), 1e-9,
       "<phi^t, (1, p)> is constant over the surface for every t"},
      {"beta_diverges", "beta_diverges", boundary, 0.0, "beta -> infinity toward the puncture"},
  };
  return entry;
}

CatalogEntry make_cylindric(const SpherePoint& p, const SpherePoint& q) {
  if (p.dot(q) > -1.0 + 1e-12) throw ConfigError("cylindric metric: q must be antipodal to p");
  CatalogEntry entry;
  entry.id = "cylindric";
  entry.default_margin = 0.05;
  entry.metric.domain = DomainSpec::punctured({p, q}, entry.default_margin);
  entry.metric.label = entry.id;
  const Vec axis = p.coords();
  entry.metric.rho = ScalarField::analytic([axis](const Vec& y) {
    const double c = y.dot(axis);
    const double gap = 1.0 - c * c;
    if (!(gap > 0.0)) throw MathDomainError("cylindric metric evaluated at a puncture");
    return AmbientJet{-0.5 * std::log(gap), c * axis / gap,
                      axis * axis.transpose() * (1.0 + c * c) / (gap * gap)};
  });
  const int n = p.dim();
  std::vector<double> lambdas(static_cast<std::size_t>(n), 0.5);
  lambdas.front() = -0.5;
  std::vector<double> boundary = coords_of(p);
  const auto qc = coords_of(q);
  boundary.insert(boundary.end(), qc.begin(), qc.end());
  entry.expectations = {
      {"lambda_constant", "lambda_constant", lambdas, 1e-9,
       "lambda = (-1/2, 1/2, ..., 1/2): the flat cylinder R x S^{n-1}"},
      {"tube_curvature", "kappa_dictionary", lambdas, 1e-3,
       "surface at time t is the tube of radius t about the p-q geodesic: kappa = tanh t, coth t"},
      {"rotational_symmetry", "rotational_symmetry", coords_of(p), 1e-9,
       "surfaces are rotationally symmetric about the p-q axis"},
      {"beta_diverges", "beta_diverges", boundary, 0.0, "beta -> infinity toward both punctures"},
  };
  return entry;
}

CatalogEntry make_height(double a, const SpherePoint& e) {
  CatalogEntry entry;
  std::ostringstream id;
  id << "height:" << a;
  entry.id = id.str();
  entry.metric.domain = DomainSpec::full_sphere(e.dim());
  entry.metric.label = entry.id;
  const Vec axis = e.coords();
  const auto dim = axis.size();
  entry.metric.rho = ScalarField::analytic([a, axis, dim](const Vec& y) {
    return AmbientJet{a * y.dot(axis), a * axis, Mat::Zero(dim, dim)};
  });
  return entry;
}

CatalogEntry catalog_entry(const std::string& id, int n) {
  if (n < 2) throw ConfigError("sphere dimension must be >= 2");
  const SpherePoint north = SpherePoint::north(n);
  if (id == "constant") return make_constant(0.0, n);
  if (id.rfind("constant:", 0) == 0) return make_constant(parse_number(id.substr(9), id), n);
  if (id == "flat-punctured") return make_flat_punctured(north);
  if (id == "cylindric") return make_cylindric(north, north.antipode());
  if (id.rfind("height:", 0) == 0) return make_height(parse_number(id.substr(7), id), north);
  throw ConfigError("unknown catalog id '" + id + "'");
}

std::vector<std::string> catalog_ids() { return {"constant:0", "flat-punctured", "cylindric"}; }

std::vector<int> default_resolution(int n) {
  if (n == 2) return {64, 64};
  return std::vector<int>(static_cast<std::size_t>(n), 24);
}

HypersurfaceMesh make_horosphere_reference(const SpherePoint& p, double s, int points_per_axis,
                                           double half_width) {
  HypersurfaceMesh mesh;
  mesh.grid = build_chart_grid(p, points_per_axis, half_width);
  mesh.n = p.dim();
  mesh.flow_time = 0.0;
  mesh.label = "horosphere-reference";
  const MinkowskiVector ell = MinkowskiVector::from_parts(1.0, p.coords());
  const MinkowskiVector m = MinkowskiVector::from_parts(0.5, Vec(-0.5 * p.coords()));
  const double b = std::exp(-s);
  const std::size_t count = mesh.grid.node_count();
  for (std::size_t i = 0; i < count; ++i) {
    const Vec v = mesh.grid.frame * mesh.grid.params[i];
    const double a = std::exp(s) * 0.5 * (1.0 + v.squaredNorm());
    const MinkowskiVector phi = a * ell + b * m + MinkowskiVector::from_parts(0.0, v);
    const MinkowskiVector psi = std::exp(s) * ell;
    mesh.phi.push_back(phi);
    mesh.psi.push_back(psi);
    mesh.eta.push_back(phi - psi);
    mesh.support.push_back(s);
    mesh.gauss.push_back(p);
  }
  mesh.kappas.assign(count, {});
  return mesh;
}

double SelfIntersectingFixture::distance_to_crossing(const Eigen::Vector3d& p) const {
  const Eigen::Vector3d d = crossing_high - crossing_low;
  const double t = std::clamp((p - crossing_low).dot(d) / d.squaredNorm(), 0.0, 1.0);
  return (p - (crossing_low + t * d)).norm();
}

SelfIntersectingFixture make_selfintersecting_fixture(bool with_crossing, int segments) {
  if (segments < 16 || segments % 4 != 0)
    throw ConfigError("figure-eight fixture: segments must be a multiple of 4, at least 16");
  constexpr double kA = 0.6, kB = 0.5, kHalfHeight = 0.15;
  const double h = 2.0 * std::numbers::pi / segments;
  SelfIntersectingFixture fixture;
  const std::array<double, 3> rows{-kHalfHeight, 0.0, kHalfHeight};
  // Samples sit at tau = (k + 1/2) h, so the chords straddling tau = 0 and
  // tau = pi pass through the origin.
  for (int k = 0; k < segments; ++k) {
    const double tau = (k + 0.5) * h;
    for (double z : rows)
      fixture.mesh.vertices.emplace_back(kA * std::sin(tau), kB * std::sin(tau) * std::cos(tau), z);
  }
  const int half = segments / 2;
  for (int k = 0; k < segments; ++k) {
    if (!with_crossing && k >= half - 3 && k <= half + 1) continue;
    const int next = (k + 1) % segments;
    for (int r = 0; r < 2; ++r) {
      const int a = 3 * k + r, b = 3 * next + r, c = 3 * next + r + 1, d = 3 * k + r + 1;
      fixture.mesh.triangles.push_back({a, b, c});
      fixture.mesh.triangles.push_back({a, c, d});
    }
  }
  fixture.crossing_low = Eigen::Vector3d(0.0, 0.0, -kHalfHeight);
  fixture.crossing_high = Eigen::Vector3d(0.0, 0.0, kHalfHeight);
  return fixture;
}

}  // namespace horocorr
