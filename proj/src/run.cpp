#include "horocorr/run.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "horocorr/errors.hpp"
#include "horocorr/verification.hpp"

namespace horocorr {

namespace {

using Clock = std::chrono::steady_clock;

std::string fmt_point(const SpherePoint& x) {
  std::ostringstream out;
  out.precision(6);
  out << '(';
  for (Eigen::Index i = 0; i < x.coords().size(); ++i) out << (i ? ", " : "") << x[i];
  out << ')';
  return out.str();
}

double number_or(const Json& doc, const char* key, double fallback) {
  if (!doc.contains(key)) return fallback;
  if (!doc[key].is_number()) throw ConfigError(std::string("config: '") + key + "' must be a number");
  return doc[key].get<double>();
}

std::string metric_id_from_json(const Json& m) {
  if (m.is_string()) return m.get<std::string>();
  if (!m.is_object() || !m.contains("kind") || !m["kind"].is_string())
    throw ConfigError("config: 'metric' must be a catalog id or {kind, parameters}");
  const auto kind = m["kind"].get<std::string>();
  const Json params = m.value("parameters", Json::object());
  std::ostringstream id;
  id.precision(17);
  if (kind == "constant") {
    id << "constant:" << number_or(params, "c", 0.0);
  } else if (kind == "height") {
    id << "height:" << number_or(params, "a", 0.0);
  } else if (kind == "flat-punctured" || kind == "cylindric") {
    id << kind;
  } else {
    throw ConfigError("config: unknown metric kind '" + kind + "'");
  }
  return id.str();
}

struct Setup {
  CatalogEntry entry;
  ParameterGrid grid;
  double margin = 0.0;
};

Setup prepare(const RunConfig& c) {
  validate(c);
  Setup s;
  s.entry = catalog_entry(c.metric, c.n);
  s.margin = c.margin.value_or(s.entry.default_margin);
  const auto resolution = c.resolution.empty() ? default_resolution(c.n) : c.resolution;
  s.grid = build_grid(s.entry.metric.domain, resolution, s.margin);
  return s;
}

std::vector<double> resolve_times(const RunConfig& c, const Setup& s) {
  if (!c.times.empty()) return c.times;
  return {min_flow_time(s.entry.metric, s.grid, c.tolerances.immersion_margin)};
}

void require_immersion(const Setup& s, double t) {
  const auto check = immersion_check(s.entry.metric, s.grid, t);
  if (check.immersed) return;
  std::ostringstream msg;
  msg << "eigenvalues reach 1/2: e^{-2t} lambda_max = " << check.max_rescaled_lambda << " at t = " << t
      << ", node " << *check.witness_node << ", x = " << fmt_point(s.grid.nodes[*check.witness_node]);
  throw MathDomainError(msg.str());
}

Json tolerances_json(const Tolerances& t) {
  return Json{{"model", t.model},
              {"beta_threshold", t.beta_threshold},
              {"realizability_bound", t.realizability_bound},
              {"realizability_side", t.realizability_side == BoundSide::TwoSided ? "two_sided" : "upper_only"},
              {"immersion_margin", t.immersion_margin},
              {"kappa_pole_window", kKappaPoleWindow},
              {"fd_stencil_half_width", kStencilHalfWidth}};
}

Json report_header(const RunConfig& c, const char* command) {
  Json r;
  r["schema"] = kReportSchema;
  r["tool_version"] = kToolVersion;
  r["command"] = command;
  r["config"] = config_to_json(c);
  r["tolerances"] = tolerances_json(c.tolerances);
  return r;
}

void emit_report(const RunConfig& c, const Json& report, std::ostream& out) {
  if (c.report.empty()) {
    out << report.dump(2) << '\n';
  } else {
    write_json_file(c.report, report);
    out << "report written to " << c.report << '\n';
  }
}

Json invariants_json(const HypersurfaceMesh& mesh, double tol) {
  const double v = model_invariant_violation(mesh);
  return Json{{"max_violation", v}, {"tolerance", tol}, {"pass", v < tol}};
}

Json curvature_json(const ConformalMetric& metric, const HypersurfaceMesh& mesh) {
  const auto report = curvature_report(mesh);
  double lo = INFINITY, hi = -INFINITY, hlo = INFINITY, hhi = -INFINITY;
  for (const auto& k : report.kappas) {
    if (k.empty()) continue;
    lo = std::min(lo, k.front());
    hi = std::max(hi, k.back());
  }
  for (const auto& h : report.mean_curvature) {
    if (!h) continue;
    hlo = std::min(hlo, *h);
    hhi = std::max(hhi, *h);
  }
  Json j;
  j["kappa_range"] = {lo, hi};
  j["mean_curvature_range"] = {hlo, hhi};
  j["lambda_kappa"] = to_json(lambda_kappa_discrepancy(metric, mesh));
  return j;
}

std::vector<SpherePoint> boundary_points(const DomainSpec& d) {
  if (d.kind == DomainSpec::Kind::PuncturedAtPoints) return d.punctures;
  return {};
}

}  // namespace

std::vector<int> parse_resolution(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, 'x')) {
    try {
      std::size_t used = 0;
      const int v = std::stoi(part, &used);
      if (used != part.size()) throw std::invalid_argument(part);
      out.push_back(v);
    } catch (const std::exception&) {
      throw ConfigError("resolution '" + text + "': expected counts like 64x64");
    }
  }
  if (out.empty()) throw ConfigError("resolution '" + text + "' is empty");
  return out;
}

std::vector<double> parse_times(const std::string& text) {
  auto number = [&](const std::string& s) {
    try {
      std::size_t used = 0;
      const double v = std::stod(s, &used);
      if (used != s.size()) throw std::invalid_argument(s);
      return v;
    } catch (const std::exception&) {
      throw ConfigError("times '" + text + "': cannot parse '" + s + "'");
    }
  };
  std::vector<double> out;
  if (text.find(':') != std::string::npos) {
    std::vector<double> f;
    std::stringstream in(text);
    std::string part;
    while (std::getline(in, part, ':')) f.push_back(number(part));
    if (f.size() != 3 || !(f[2] > 0.0) || f[1] < f[0])
      throw ConfigError("times '" + text + "': expected start:stop:step with step > 0");
    const auto count = static_cast<long>(std::floor((f[1] - f[0]) / f[2] + 1e-9));
    for (long i = 0; i <= count; ++i) out.push_back(f[0] + static_cast<double>(i) * f[2]);
    return out;
  }
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) out.push_back(number(part));
  return out;
}

Analyses parse_analyses(const std::string& text) {
  Analyses a{false, false, false, false, false, false, false};
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, ',')) {
    if (part == "curvature") a.curvature = true;
    else if (part == "convexity") a.convexity = true;
    else if (part == "flow_invariance") a.flow_invariance = true;
    else if (part == "embeddedness") a.embeddedness = true;
    else if (part == "beta_scan") a.beta_scan = true;
    else if (part == "realizability") a.realizability = true;
    else if (part == "expectations") a.expectations = true;
    else if (part == "all") a = Analyses{true, true, true, true, true, true, true};
    else throw ConfigError("unknown analysis '" + part + "'");
  }
  return a;
}

RunConfig config_from_json(const Json& doc) {
  if (!doc.is_object()) throw ConfigError("config: top level must be an object");
  if (doc.contains("schema") && doc["schema"] != kConfigSchema)
    throw ConfigError("config: unsupported schema " + doc["schema"].dump());
  RunConfig c;
  try {
    if (doc.contains("metric")) c.metric = metric_id_from_json(doc["metric"]);
    if (doc.contains("n")) c.n = doc["n"].get<int>();
    if (doc.contains("resolution")) c.resolution = doc["resolution"].get<std::vector<int>>();
    if (doc.contains("margin")) c.margin = doc["margin"].get<double>();
    if (doc.contains("t")) {
      if (doc["t"].is_array()) c.times = doc["t"].get<std::vector<double>>();
      else c.times = {doc["t"].get<double>()};
    }
    if (doc.contains("analyses")) {
      const auto& a = doc["analyses"];
      c.analyses.curvature = a.value("curvature", c.analyses.curvature);
      c.analyses.convexity = a.value("convexity", c.analyses.convexity);
      c.analyses.flow_invariance = a.value("flow_invariance", c.analyses.flow_invariance);
      c.analyses.embeddedness = a.value("embeddedness", c.analyses.embeddedness);
      c.analyses.beta_scan = a.value("beta_scan", c.analyses.beta_scan);
      c.analyses.realizability = a.value("realizability", c.analyses.realizability);
      c.analyses.expectations = a.value("expectations", c.analyses.expectations);
    }
    if (doc.contains("tolerances")) {
      const auto& t = doc["tolerances"];
      c.tolerances.model = t.value("model", c.tolerances.model);
      c.tolerances.beta_threshold = t.value("beta_threshold", c.tolerances.beta_threshold);
      c.tolerances.realizability_bound = t.value("realizability_bound", c.tolerances.realizability_bound);
      c.tolerances.immersion_margin = t.value("immersion_margin", c.tolerances.immersion_margin);
      const auto side = t.value("realizability_side", std::string("two_sided"));
      if (side == "two_sided") c.tolerances.realizability_side = BoundSide::TwoSided;
      else if (side == "upper_only") c.tolerances.realizability_side = BoundSide::UpperOnly;
      else throw ConfigError("config: realizability_side must be two_sided or upper_only");
    }
    if (doc.contains("output")) {
      const auto& o = doc["output"];
      c.output = o.value("mesh", c.output);
      c.report = o.value("report", c.report);
      c.obj_dir = o.value("obj_dir", c.obj_dir);
    }
  } catch (const nlohmann::json::exception& ex) {
    throw ConfigError(std::string("config: ") + ex.what());
  }
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config '" + path + "'");
  try {
    return config_from_json(Json::parse(in));
  } catch (const nlohmann::json::parse_error& ex) {
    throw ConfigError("config '" + path + "': " + ex.what());
  }
}

Json config_to_json(const RunConfig& c) {
  Json j;
  j["schema"] = kConfigSchema;
  j["metric"] = c.metric;
  j["n"] = c.n;
  j["resolution"] = c.resolution.empty() ? default_resolution(c.n) : c.resolution;
  j["margin"] = c.margin ? Json(*c.margin) : Json(nullptr);
  j["t"] = c.times;
  j["analyses"] = {{"curvature", c.analyses.curvature},       {"convexity", c.analyses.convexity},
                   {"flow_invariance", c.analyses.flow_invariance}, {"embeddedness", c.analyses.embeddedness},
                   {"beta_scan", c.analyses.beta_scan},       {"realizability", c.analyses.realizability},
                   {"expectations", c.analyses.expectations}};
  j["tolerances"] = tolerances_json(c.tolerances);
  return j;
}

void validate(const RunConfig& c) {
  if (c.n < 2) throw ConfigError("n must be >= 2");
  if (!c.resolution.empty()) {
    if (static_cast<int>(c.resolution.size()) != c.n)
      throw ConfigError("resolution needs " + std::to_string(c.n) + " counts");
    for (int r : c.resolution)
      if (r < 4) throw ConfigError("every resolution entry must be >= 4");
  }
  if (c.margin && !(*c.margin >= 0.0)) throw ConfigError("margin must be >= 0");
  for (double t : c.times)
    if (!std::isfinite(t)) throw ConfigError("flow times must be finite");
  if (!(c.tolerances.model > 0.0)) throw ConfigError("model tolerance must be > 0");
  if (!(c.tolerances.immersion_margin >= 0.0 && c.tolerances.immersion_margin < 0.5))
    throw ConfigError("immersion margin must lie in [0, 1/2)");
  catalog_entry(c.metric, c.n);
}

int cmd_build(const RunConfig& c, std::ostream& out) {
  const auto s = prepare(c);
  const double t = resolve_times(c, s).front();
  require_immersion(s, t);
  const auto mesh = with_fd_curvatures(metric_to_hypersurface(s.entry.metric, t, s.grid));
  const std::string sidecar = c.output + ".json";
  write_json_file(sidecar, mesh_sidecar(mesh));
  if (c.n == 2) {
    const std::string obj = c.output + ".obj";
    std::ostringstream comment;
    comment << s.entry.id << " t=" << t;
    write_obj_file(obj, to_ball_mesh(mesh), comment.str());
    out << "wrote " << obj << " and " << sidecar << " (" << mesh.size() << " nodes, t = " << t << ")\n";
  } else {
    out << "wrote " << sidecar << " (" << mesh.size() << " nodes, t = " << t << "; OBJ needs n = 2)\n";
  }
  return kExitOk;
}

int cmd_analyze(const RunConfig& c, std::ostream& out) {
  const auto s = prepare(c);
  const auto& metric = s.entry.metric;
  const auto times = resolve_times(c, s);
  Json report = report_header(c, "analyze");
  report["metric"] = to_json(s.entry);
  report["grid"] = {{"sizes", s.grid.sizes}, {"nodes", s.grid.node_count()}, {"margin", s.margin}};
  Json timings;
  auto timed = [&](const char* name, auto&& fn) {
    const auto start = Clock::now();
    fn();
    timings[name] = std::chrono::duration<double>(Clock::now() - start).count();
  };
  if (c.analyses.realizability) {
    timed("realizability", [&] {
      report["realizability"] = to_json(
          realizability_scan(metric, s.grid, c.tolerances.realizability_bound, c.tolerances.realizability_side));
    });
  }
  if (c.analyses.beta_scan) {
    timed("beta_scan", [&] {
      Json scans = Json::array();
      const auto points = boundary_points(metric.domain);
      for (const auto& p : points) {
        Json j = to_json(boundary_divergence_scan(metric, p, dyadic_approach(p, 20), c.tolerances.beta_threshold));
        j["boundary_point"] = to_json(p);
        scans.push_back(std::move(j));
      }
      if (points.empty()) {
        DivergenceScan none;
        none.threshold = c.tolerances.beta_threshold;
        none.note = metric.domain.has_boundary() ? "no isolated boundary points to approach" : "domain has no boundary";
        scans.push_back(to_json(none));
      }
      report["beta_scan"] = std::move(scans);
    });
  }
  const bool needs_mesh = c.analyses.curvature || c.analyses.convexity || c.analyses.flow_invariance ||
                          c.analyses.embeddedness;
  if (needs_mesh) {
    Json per_t = Json::array();
    for (double t : times) {
      require_immersion(s, t);
      Json row;
      row["t"] = t;
      const auto mesh = with_fd_curvatures(metric_to_hypersurface(metric, t, s.grid));
      row["model_invariants"] = invariants_json(mesh, c.tolerances.model);
      if (c.analyses.curvature) timed("curvature", [&] { row["curvature"] = curvature_json(metric, mesh); });
      if (c.analyses.convexity) timed("convexity", [&] { row["convexity"] = to_json(convexity_check(mesh)); });
      if (c.analyses.flow_invariance) {
        timed("flow_invariance", [&] {
          const auto flowed = normal_flow(mesh, 1.0, true);
          Json j = to_json(flow_invariance_check(mesh, flowed));
          j["flow_by"] = 1.0;
          row["flow_invariance"] = std::move(j);
        });
      }
      if (c.analyses.embeddedness && c.n == 2)
        timed("embeddedness", [&] { row["embeddedness"] = to_json(embeddedness_check(mesh)); });
      per_t.push_back(std::move(row));
    }
    report["surfaces"] = std::move(per_t);
  }
  if (c.analyses.expectations) {
    timed("expectations", [&] {
      Json list = Json::array();
      for (const auto& r : check_expectations(s.entry, s.grid, times)) {
        list.push_back({{"name", r.name}, {"kind", r.kind}, {"pass", r.passed}, {"measured", r.measured},
                        {"tolerance", r.tolerance}, {"detail", r.detail}});
      }
      report["expectations"] = std::move(list);
    });
  }
  if (c.timings) report["timings_seconds"] = timings;
  emit_report(c, report, out);
  return kExitOk;
}

int cmd_flow(const RunConfig& c, std::ostream& out) {
  const auto s = prepare(c);
  const auto& metric = s.entry.metric;
  if (c.times.empty()) throw ConfigError("flow needs a time lattice (--t 1,2,3 or start:stop:step)");
  if (!std::is_sorted(c.times.begin(), c.times.end())) throw ConfigError("time lattice must be ascending");
  for (double t : c.times) require_immersion(s, t);
  Json report = report_header(c, "flow");
  report["metric"] = to_json(s.entry);
  const auto start = Clock::now();

  const auto base = with_fd_curvatures(metric_to_hypersurface(metric, c.times.front(), s.grid));
  Json steps = Json::array();
  for (double t : c.times) {
    Json row;
    row["t"] = t;
    const auto flowed = normal_flow(base, t - c.times.front(), true);
    double worst = 0.0;
    std::size_t nodes = 0;
    for (std::size_t i = 0; i < flowed.fd_kappas.size(); ++i) {
      if (flowed.fd_kappas[i].empty() || flowed.riccati_kappas[i].empty()) continue;
      ++nodes;
      for (std::size_t k = 0; k < flowed.fd_kappas[i].size(); ++k)
        worst = std::max(worst, std::abs(flowed.fd_kappas[i][k] - flowed.riccati_kappas[i][k]));
    }
    row["riccati_vs_fd"] = {{"max_discrepancy", worst}, {"nodes", nodes}, {"tolerance", 1e-3}, {"pass", worst < 1e-3}};
    row["invariance"] = to_json(flow_invariance_check(base, flowed));
    if (!c.obj_dir.empty() && c.n == 2) {
      std::filesystem::create_directories(c.obj_dir);
      std::ostringstream name;
      name << c.obj_dir << "/t_" << t << ".obj";
      write_obj_file(name.str(), to_ball_mesh(flowed.mesh), s.entry.id);
      row["obj"] = name.str();
    }
    steps.push_back(std::move(row));
  }
  report["steps"] = std::move(steps);
  if (c.n == 2) report["embedding"] = to_json(find_embedding_time(metric, s.grid, c.times));
  if (c.timings) report["timings_seconds"] = {{"total", std::chrono::duration<double>(Clock::now() - start).count()}};
  emit_report(c, report, out);
  return kExitOk;
}

int cmd_verify(const std::string& filter, bool json, bool timings, std::ostream& out) {
  const auto results = run_acceptance(filter);
  const CriterionResult* first_failure = nullptr;
  for (const auto& r : results)
    if (!r.passed && !first_failure) first_failure = &r;
  if (json) {
    Json doc;
    doc["schema"] = kReportSchema;
    doc["tool_version"] = kToolVersion;
    doc["command"] = "verify";
    doc["filter"] = filter;
    Json list = Json::array();
    for (const auto& r : results) {
      Json j{{"id", r.id}, {"tag", r.tag}, {"title", r.title}, {"pass", r.passed}, {"checks", r.details}};
      if (timings) j["seconds"] = r.seconds;
      list.push_back(std::move(j));
    }
    doc["criteria"] = std::move(list);
    doc["pass"] = first_failure == nullptr;
    out << doc.dump(2) << '\n';
  } else {
    char buf[64];
    for (const auto& r : results) {
      out << (r.passed ? "PASS" : "FAIL") << "  " << r.id << " [" << r.tag << "] " << r.title;
      if (timings) {
        std::snprintf(buf, sizeof buf, " (%.2f s)", r.seconds);
        out << buf;
      }
      out << '\n';
      for (const auto& line : r.details) out << line << '\n';
    }
    if (first_failure)
      out << "first failure: criterion " << first_failure->id << " [" << first_failure->tag << "]: "
          << first_failure->first_failure << '\n';
  }
  return first_failure ? kExitVerifyFailed : kExitOk;
}

int cmd_catalog_list(std::ostream& out) {
  Json doc;
  doc["schema"] = kReportSchema;
  Json entries = Json::array();
  for (const auto& id : catalog_ids()) entries.push_back(to_json(catalog_entry(id)));
  doc["entries"] = std::move(entries);
  doc["parametrized"] = {"constant:<c>", "height:<a>"};
  out << doc.dump(2) << '\n';
  return kExitOk;
}

int cmd_catalog_show(const std::string& id, int n, std::ostream& out) {
  out << to_json(catalog_entry(id, n)).dump(2) << '\n';
  return kExitOk;
}

int run_guarded(const std::function<int()>& command, std::ostream& err) {
  try {
    return command();
  } catch (const ConfigError& ex) {
    err << "config error: " << ex.what() << '\n';
    return kExitConfig;
  } catch (const DimensionError& ex) {
    err << "config error: " << ex.what() << '\n';
    return kExitConfig;
  } catch (const MathDomainError& ex) {
    err << "math domain error: " << ex.what() << '\n';
    return kExitMathDomain;
  } catch (const std::filesystem::filesystem_error& ex) {
    err << "config error: " << ex.what() << '\n';
    return kExitConfig;
  }
}

}  // namespace horocorr
