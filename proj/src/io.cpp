#include "horocorr/io.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>

#include "horocorr/errors.hpp"

namespace horocorr {

namespace {

Json list(const std::vector<double>& v) {
  Json out = Json::array();
  for (double x : v) out.push_back(x);
  return out;
}

Json vec(const Vec& v) {
  Json out = Json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

std::ofstream open_for_write(const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw ConfigError("cannot open '" + path + "' for writing");
  return out;
}

}  // namespace

void write_obj(std::ostream& out, const BallMesh& mesh, const std::string& comment) {
  if (!comment.empty()) out << "# " << comment << '\n';
  char line[128];
  for (const auto& v : mesh.vertices) {
    std::snprintf(line, sizeof line, "v %.9g %.9g %.9g\n", v.x(), v.z(), -v.y());
    out << line;
  }
  for (const auto& t : mesh.triangles)
    out << "f " << t[0] + 1 << ' ' << t[1] + 1 << ' ' << t[2] + 1 << '\n';
}

void write_obj_file(const std::string& path, const BallMesh& mesh, const std::string& comment) {
  auto out = open_for_write(path);
  write_obj(out, mesh, comment);
}

Json mesh_sidecar(const HypersurfaceMesh& mesh) {
  Json doc;
  doc["schema"] = kSidecarSchema;
  doc["label"] = mesh.label;
  doc["n"] = mesh.n;
  doc["flow_time"] = mesh.flow_time;
  doc["grid_sizes"] = mesh.grid.sizes;
  Json nodes = Json::array();
  for (std::size_t i = 0; i < mesh.size(); ++i) {
    Json node;
    node["support"] = mesh.support[i];
    node["gauss"] = vec(mesh.gauss[i].coords());
    if (mesh.kappas[i].empty()) {
      node["kappas"] = nullptr;
      node["lambdas"] = nullptr;
    } else {
      std::vector<double> lambdas;
      for (double k : mesh.kappas[i]) lambdas.push_back(lambda_from_kappa(k));
      node["kappas"] = list(mesh.kappas[i]);
      node["lambdas"] = list(lambdas);
    }
    nodes.push_back(std::move(node));
  }
  doc["nodes"] = std::move(nodes);
  return doc;
}

void write_json_file(const std::string& path, const Json& doc) {
  auto out = open_for_write(path);
  out << doc.dump(2) << '\n';
}

Json to_json(const SpherePoint& p) { return vec(p.coords()); }

Json to_json(const RealizabilityReport& r) {
  Json j;
  j["verdict"] = r.within_bound ? "WithinBound" : "ExceedsBound";
  j["bound"] = r.bound_used;
  j["side"] = r.side == BoundSide::TwoSided ? "two_sided" : "upper_only";
  j["sup_abs_lambda"] = r.sup_abs_lambda;
  j["min_lambda"] = r.min_lambda;
  j["max_lambda"] = r.max_lambda;
  j["boundary_of_bound"] = r.at_bound;
  j["samples"] = r.sample_count;
  j["witness_node"] = r.witness_node ? Json(*r.witness_node) : Json(nullptr);
  j["witness_point"] = r.witness_point ? to_json(*r.witness_point) : Json(nullptr);
  return j;
}

Json to_json(const DivergenceScan& s) {
  Json j;
  j["verdict"] = s.verdict == DivergenceScan::Verdict::Diverging ? "Diverging" : "Inconclusive";
  j["threshold"] = s.threshold;
  j["betas"] = list(s.betas);
  if (!s.note.empty()) j["note"] = s.note;
  return j;
}

Json to_json(const ConvexityVerdict& v) {
  Json j;
  j["verdict"] = std::string(to_string(v.verdict));
  j["kappa0"] = v.kappa0;
  j["nodes_checked"] = v.nodes_checked;
  j["witness_node"] = v.witness_node ? Json(*v.witness_node) : Json(nullptr);
  return j;
}

Json to_json(const DictionaryDiscrepancy& d) {
  Json j;
  j["max_discrepancy"] = d.max_discrepancy;
  j["worst_node"] = d.worst_node;
  j["nodes"] = d.nodes;
  return j;
}

Json to_json(const EmbeddingVerdict& v) {
  Json j;
  j["verdict"] = v.embedded ? "Embedded" : "SelfIntersecting";
  if (v.witness) {
    j["witness_triangles"] = {(*v.witness)[0], (*v.witness)[1]};
    j["intersection_point"] = {v.intersection_point.x(), v.intersection_point.y(),
                               v.intersection_point.z()};
  } else {
    j["witness_triangles"] = nullptr;
  }
  j["triangles"] = v.triangle_count;
  j["degenerate_triangles"] = v.degenerate_triangles;
  j["candidate_pairs_tested"] = v.candidate_pairs_tested;
  j["cell_size"] = v.cell_size;
  return j;
}

Json to_json(const EmbeddingTimeResult& r) {
  Json j;
  j["first_embedded_t"] = r.first_embedded_t ? Json(*r.first_embedded_t) : Json(nullptr);
  if (!r.first_embedded_t) j["note"] = "NoEmbeddedTimeFound";
  j["monotone"] = r.monotone;
  Json table = Json::array();
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    Json row = to_json(r.verdicts[i]);
    row["t"] = r.times[i];
    table.push_back(std::move(row));
  }
  j["table"] = std::move(table);
  return j;
}

Json to_json(const FlowInvarianceReport& r) {
  Json j;
  j["pass"] = r.pass();
  j["gauss_max_deviation"] = r.gauss_max_deviation;
  j["edge_scale_max_rel_error"] = r.edge_scale_max_rel_error;
  j["kappa_max_discrepancy"] =
      r.kappa_max_discrepancy ? Json(*r.kappa_max_discrepancy) : Json(nullptr);
  j["tolerances"] = {{"gauss", r.gauss_tolerance},
                     {"edge", r.edge_tolerance},
                     {"kappa", r.kappa_tolerance}};
  j["violations"] = r.violations;
  return j;
}

Json to_json(const GradientBoundConstants& c) {
  return Json{{"C", c.C}, {"C0", c.C0}, {"K", c.K}, {"A", c.A}, {"delta", c.delta}, {"Ybar", c.Ybar}};
}

Json to_json(const Expectation& e) {
  Json j;
  j["name"] = e.name;
  j["kind"] = e.kind;
  j["values"] = list(e.values);
  j["tolerance"] = e.tolerance;
  j["description"] = e.description;
  return j;
}

Json to_json(const CatalogEntry& e) {
  Json j;
  j["id"] = e.id;
  j["n"] = e.metric.n();
  j["domain"] = e.metric.domain.describe();
  j["default_margin"] = e.default_margin;
  Json ex = Json::array();
  for (const auto& x : e.expectations) ex.push_back(to_json(x));
  j["expectations"] = std::move(ex);
  return j;
}

}  // namespace horocorr
