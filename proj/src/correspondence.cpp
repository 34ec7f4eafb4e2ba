#include "horocorr/correspondence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

#include "horocorr/errors.hpp"
#include "horocorr/parallel.hpp"

namespace horocorr {

bool HypersurfaceMesh::has_kappas() const {
  return std::any_of(kappas.begin(), kappas.end(), [](const auto& k) { return !k.empty(); });
}

HypersurfaceMesh metric_to_hypersurface(const ConformalMetric& metric, double t,
                                        const ParameterGrid& grid) {
  if (grid.n != metric.n()) throw DimensionError("metric_to_hypersurface: grid dimension mismatch");
  HypersurfaceMesh mesh;
  mesh.grid = grid;
  mesh.n = grid.n;
  mesh.flow_time = t;
  mesh.label = metric.label;
  const std::size_t count = grid.node_count();
  mesh.phi.resize(count);
  mesh.eta.resize(count);
  mesh.psi.resize(count);
  mesh.support.resize(count);
  mesh.gauss = grid.nodes;
  mesh.kappas.assign(count, {});

  parallel_for(count, [&](std::size_t i) {
    const SpherePoint& x = grid.nodes[i];
    if (!metric.domain.contains(x)) {
      std::ostringstream msg;
      msg << "metric_to_hypersurface: grid node " << i << " is outside the domain";
      throw MathDomainError(msg.str());
    }
    const double sigma = metric.rho.value(x) + t;
    const Vec g = metric.rho.gradient(x).vec;
    // Assembled in extended precision and rounded once, so the model
    // identities hold to a few ulps of |phi|^2 even far from O.
    using Ld = long double;
    const auto dim = x.coords().size();
    std::vector<Ld> xl(dim), gl(dim);
    Ld norm2 = 0, gx = 0;
    for (Eigen::Index k = 0; k < dim; ++k) norm2 += Ld(x[k]) * x[k];
    const Ld inv = 1 / std::sqrt(norm2);
    for (Eigen::Index k = 0; k < dim; ++k) {
      xl[k] = x[k] * inv;
      gx += Ld(g(k)) * xl[k];
    }
    Ld g2 = 0;
    for (Eigen::Index k = 0; k < dim; ++k) {
      gl[k] = g(k) - gx * xl[k];
      g2 += gl[k] * gl[k];
    }
    const Ld es = std::exp(Ld(sigma));
    const Ld ems = 1 / es;
    const Ld a = es / 2 * (1 + ems * ems * (1 + g2));
    Vec phi(dim + 1), psi(dim + 1), eta(dim + 1);
    phi(0) = static_cast<double>(a);
    psi(0) = static_cast<double>(es);
    eta(0) = static_cast<double>(a - es);
    for (Eigen::Index k = 0; k < dim; ++k) {
      const Ld c = a * xl[k] + ems * (gl[k] - xl[k]);
      phi(k + 1) = static_cast<double>(c);
      psi(k + 1) = static_cast<double>(es * xl[k]);
      eta(k + 1) = static_cast<double>(c - es * xl[k]);
    }
    mesh.phi[i] = MinkowskiVector(std::move(phi));
    mesh.psi[i] = MinkowskiVector(std::move(psi));
    mesh.eta[i] = MinkowskiVector(std::move(eta));
    mesh.support[i] = sigma;
  });
  return mesh;
}

ImmersionCheck immersion_check(const ConformalMetric& metric, const ParameterGrid& grid,
                               double t) {
  std::vector<double> top(grid.node_count());
  parallel_for(grid.node_count(), [&](std::size_t i) {
    top[i] = p_eigenvalues_rescaled(metric, grid.nodes[i], t).back();
  });
  ImmersionCheck check;
  check.max_rescaled_lambda = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < top.size(); ++i) {
    check.max_rescaled_lambda = std::max(check.max_rescaled_lambda, top[i]);
    if (top[i] >= 0.5 && !check.witness_node) check.witness_node = i;
  }
  check.immersed = !check.witness_node.has_value();
  return check;
}

double min_flow_time(const ConformalMetric& metric, const ParameterGrid& grid, double margin) {
  if (!(margin > 0.0 && margin < 0.5)) throw ConfigError("min_flow_time: margin must lie in (0, 1/2)");
  const double lambda_max = immersion_check(metric, grid, 0.0).max_rescaled_lambda;
  const double target = 0.5 - margin;
  if (lambda_max <= target) return 0.0;
  constexpr double kLattice = 1e-3;
  auto k = static_cast<long long>(std::ceil(0.5 * std::log(lambda_max / target) / kLattice));
  k = std::max(k - 1, 0LL);
  while (std::exp(-2.0 * k * kLattice) * lambda_max > target) ++k;
  return static_cast<double>(k) * kLattice;
}

std::vector<SupportSample> hypersurface_to_metric(const HypersurfaceMesh& mesh) {
  std::vector<SupportSample> out(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const MinkowskiVector psi = mesh.phi[i] - mesh.eta[i];
    if (!(psi.time() > 0.0)) {
      std::ostringstream msg;
      msg << "hypersurface_to_metric: psi_0 <= 0 at node " << i
          << " (light cone map is not future pointing)";
      throw MathDomainError(msg.str());
    }
    out[i].support = std::log(psi.time());
    out[i].gauss = SpherePoint(Vec(psi.space() / psi.time()));
  }
  return out;
}

double lambda_from_kappa(double kappa) {
  if (kappa == -1.0) throw MathDomainError("lambda_from_kappa: kappa = -1 is a pole");
  return 0.5 - 1.0 / (1.0 + kappa);
}

double kappa_from_lambda(double lambda) {
  if (!(lambda < 0.5))
    throw MathDomainError("kappa_from_lambda: lambda >= 1/2 does not give an immersion");
  return (0.5 + lambda) / (0.5 - lambda);
}

namespace {

// Fourth-order central first derivative along `axis`.
Vec stencil_derivative(const std::vector<MinkowskiVector>& field, const ParameterGrid& grid,
                       std::size_t node, int axis) {
  const double h = grid.spacing[static_cast<std::size_t>(axis)];
  const auto m2 = grid.neighbor(node, axis, -2);
  const auto m1 = grid.neighbor(node, axis, -1);
  const auto p1 = grid.neighbor(node, axis, 1);
  const auto p2 = grid.neighbor(node, axis, 2);
  return (field[*m2].coords() - 8.0 * field[*m1].coords() + 8.0 * field[*p1].coords() -
          field[*p2].coords()) /
         (12.0 * h);
}

double lorentz_dot(const Vec& u, const Vec& v) { return -u(0) * v(0) + u.tail(u.size() - 1).dot(v.tail(v.size() - 1)); }

}  // namespace

std::vector<double> principal_curvatures_fd(const HypersurfaceMesh& mesh, std::size_t node) {
  const auto& grid = mesh.grid;
  if (!grid.is_interior(node, kStencilHalfWidth)) {
    std::ostringstream msg;
    msg << "principal_curvatures_fd: node " << node << " is on the stencil boundary";
    throw MathDomainError(msg.str());
  }
  const int n = mesh.n;
  std::vector<Vec> dphi(static_cast<std::size_t>(n)), deta(static_cast<std::size_t>(n));
  for (int a = 0; a < n; ++a) {
    dphi[static_cast<std::size_t>(a)] = stencil_derivative(mesh.phi, grid, node, a);
    deta[static_cast<std::size_t>(a)] = stencil_derivative(mesh.eta, grid, node, a);
  }
  Mat first(n, n), second(n, n);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < n; ++j) {
      const auto ui = static_cast<std::size_t>(i);
      const auto uj = static_cast<std::size_t>(j);
      first(i, j) = lorentz_dot(dphi[ui], dphi[uj]);
      second(i, j) = 0.5 * kShapeOperatorSign *
                     (lorentz_dot(dphi[ui], deta[uj]) + lorentz_dot(dphi[uj], deta[ui]));
    }
  }
  // Relative degeneracy test: det(I) against the product of its diagonal.
  const double scale = first.diagonal().prod();
  if (!(scale > 0.0) || first.determinant() <= 1e-12 * scale) {
    std::ostringstream msg;
    msg << "principal_curvatures_fd: degenerate first fundamental form at node " << node;
    throw MathDomainError(msg.str());
  }
  try {
    return generalized_symmetric_eigenvalues(second, first);
  } catch (const MathDomainError&) {
    std::ostringstream msg;
    msg << "principal_curvatures_fd: degenerate first fundamental form at node " << node;
    throw MathDomainError(msg.str());
  }
}

HypersurfaceMesh with_fd_curvatures(const HypersurfaceMesh& mesh) {
  HypersurfaceMesh out = mesh;
  out.kappas.assign(mesh.size(), {});
  parallel_for(mesh.size(), [&](std::size_t i) {
    if (mesh.grid.is_interior(i, kStencilHalfWidth)) out.kappas[i] = principal_curvatures_fd(mesh, i);
  });
  return out;
}

std::string_view to_string(ConvexityVerdict::Class c) {
  switch (c) {
    case ConvexityVerdict::Class::UniformlyWeaklyHC: return "UniformlyWeaklyHC";
    case ConvexityVerdict::Class::WeaklyHCOnly: return "WeaklyHCOnly";
    case ConvexityVerdict::Class::NotWeaklyHC: return "NotWeaklyHC";
  }
  return "NotWeaklyHC";
}

ConvexityVerdict convexity_check(const std::vector<std::vector<double>>& kappas) {
  ConvexityVerdict verdict;
  double min_kappa = std::numeric_limits<double>::infinity();
  std::optional<std::size_t> lower_branch;
  for (std::size_t i = 0; i < kappas.size(); ++i) {
    const auto& k = kappas[i];
    if (k.empty()) continue;
    ++verdict.nodes_checked;
    bool above = true, below = true;
    for (double v : k) {
      if (std::abs(v + 1.0) <= kKappaPoleWindow) above = below = false;
      above = above && v > -1.0;
      below = below && v < -1.0;
    }
    if (!above && !below) {
      verdict.verdict = ConvexityVerdict::Class::NotWeaklyHC;
      verdict.witness_node = i;
      return verdict;
    }
    if (below && !lower_branch) lower_branch = i;
    min_kappa = std::min(min_kappa, *std::min_element(k.begin(), k.end()));
  }
  if (verdict.nodes_checked == 0)
    throw ConfigError("convexity_check: mesh has no principal curvatures");
  if (lower_branch) {
    verdict.verdict = ConvexityVerdict::Class::WeaklyHCOnly;
    verdict.witness_node = lower_branch;
    return verdict;
  }
  verdict.verdict = ConvexityVerdict::Class::UniformlyWeaklyHC;
  verdict.kappa0 = min_kappa;
  return verdict;
}

ConvexityVerdict convexity_check(const HypersurfaceMesh& mesh) { return convexity_check(mesh.kappas); }

CurvatureReport curvature_report(const HypersurfaceMesh& mesh) {
  CurvatureReport report;
  report.kappas = mesh.kappas;
  report.lambdas.resize(mesh.size());
  report.mean_curvature.resize(mesh.size());
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const auto& k = mesh.kappas[i];
    if (k.empty()) continue;
    double sum = 0.0;
    for (double v : k) {
      sum += v;
      report.lambdas[i].push_back(lambda_from_kappa(v));
    }
    report.mean_curvature[i] = sum / static_cast<double>(k.size());
  }
  report.convexity = convexity_check(mesh.kappas);
  return report;
}

DictionaryDiscrepancy lambda_kappa_discrepancy(const ConformalMetric& metric,
                                               const HypersurfaceMesh& mesh) {
  std::vector<double> worst(mesh.size(), -1.0);
  parallel_for(mesh.size(), [&](std::size_t i) {
    const auto& k = mesh.kappas[i];
    if (k.empty()) return;
    const auto lambdas = p_eigenvalues_rescaled(metric, mesh.grid.nodes[i], mesh.flow_time);
    std::vector<double> from_kappa;
    for (double v : k) from_kappa.push_back(lambda_from_kappa(v));
    std::sort(from_kappa.begin(), from_kappa.end());
    double d = 0.0;
    for (std::size_t j = 0; j < lambdas.size(); ++j) d = std::max(d, std::abs(lambdas[j] - from_kappa[j]));
    worst[i] = d;
  });
  DictionaryDiscrepancy out;
  for (std::size_t i = 0; i < worst.size(); ++i) {
    if (worst[i] < 0.0) continue;
    ++out.nodes;
    if (worst[i] > out.max_discrepancy) {
      out.max_discrepancy = worst[i];
      out.worst_node = i;
    }
  }
  return out;
}

HorosphericalEdgeLengths horospherical_metric_samples(const HypersurfaceMesh& mesh) {
  HorosphericalEdgeLengths out;
  out.edges = mesh.grid.edges();
  out.conformal.resize(out.edges.size());
  out.pullback.resize(out.edges.size());
  for (std::size_t e = 0; e < out.edges.size(); ++e) {
    const auto [a, b] = out.edges[e];
    const double scale = std::exp(0.5 * (mesh.support[a] + mesh.support[b]));
    out.conformal[e] = scale * sphere_distance(mesh.gauss[a], mesh.gauss[b]);
    const MinkowskiVector diff = mesh.psi[b] - mesh.psi[a];
    const double radicand = mink_inner(diff, diff);
    if (radicand < 0.0) {
      std::ostringstream msg;
      msg << "horospherical_metric_samples: timelike psi difference on edge " << e << " ("
          << a << ", " << b << ")";
      throw MathDomainError(msg.str());
    }
    out.pullback[e] = std::sqrt(radicand);
  }
  return out;
}

InjectivityProbe gauss_injectivity_probe(const HypersurfaceMesh& mesh, double radius) {
  InjectivityProbe probe;
  if (mesh.size() == 0) return probe;
  const int min_grid_distance = 2 * kStencilHalfWidth;
  const auto dim = mesh.gauss.front().coords().size();

  using Key = std::vector<long long>;
  auto key_of = [&](const SpherePoint& p) {
    Key key(static_cast<std::size_t>(dim));
    for (Eigen::Index k = 0; k < dim; ++k)
      key[static_cast<std::size_t>(k)] = static_cast<long long>(std::floor(p[k] / radius));
    return key;
  };
  std::map<Key, std::vector<std::size_t>> cells;
  for (std::size_t i = 0; i < mesh.size(); ++i) cells[key_of(mesh.gauss[i])].push_back(i);

  std::vector<std::optional<std::size_t>> partner(mesh.size());
  parallel_for(mesh.size(), [&](std::size_t i) {
    const Key base = key_of(mesh.gauss[i]);
    std::size_t combos = 1;
    for (Eigen::Index k = 0; k < dim; ++k) combos *= 3;
    for (std::size_t c = 0; c < combos; ++c) {
      Key key = base;
      std::size_t code = c;
      for (Eigen::Index k = 0; k < dim; ++k) {
        key[static_cast<std::size_t>(k)] += static_cast<long long>(code % 3) - 1;
        code /= 3;
      }
      auto it = cells.find(key);
      if (it == cells.end()) continue;
      for (std::size_t j : it->second) {
        if (j <= i) continue;
        if (partner[i] && j >= *partner[i]) continue;
        if ((mesh.gauss[i].coords() - mesh.gauss[j].coords()).norm() >= radius) continue;
        if (mesh.grid.index_distance(i, j) <= min_grid_distance) continue;
        partner[i] = j;
      }
    }
  });
  for (std::size_t i = 0; i < partner.size(); ++i) {
    if (partner[i]) {
      probe.collision = true;
      probe.pair = std::array<std::size_t, 2>{i, *partner[i]};
      break;
    }
  }
  return probe;
}

double model_invariant_violation(const HypersurfaceMesh& mesh) {
  double worst = 0.0;
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    const auto& phi = mesh.phi[i];
    const auto& eta = mesh.eta[i];
    const auto& psi = mesh.psi[i];
    worst = std::max({worst, std::abs(mink_inner(phi, phi) + 1.0), std::abs(mink_inner(eta, eta) - 1.0),
                      std::abs(mink_inner(phi, eta)), std::abs(mink_inner(phi, psi) + 1.0),
                      (psi - (phi - eta)).coords().cwiseAbs().maxCoeff()});
  }
  return worst;
}

double max_node_difference(const HypersurfaceMesh& a, const HypersurfaceMesh& b) {
  if (a.size() != b.size()) throw DimensionError("max_node_difference: meshes differ in size");
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    const double scale_phi = std::max(1.0, a.phi[i].coords().cwiseAbs().maxCoeff());
    const double scale_eta = std::max(1.0, a.eta[i].coords().cwiseAbs().maxCoeff());
    worst = std::max(worst, (a.phi[i].coords() - b.phi[i].coords()).cwiseAbs().maxCoeff() / scale_phi);
    worst = std::max(worst, (a.eta[i].coords() - b.eta[i].coords()).cwiseAbs().maxCoeff() / scale_eta);
  }
  return worst;
}

}  // namespace horocorr
