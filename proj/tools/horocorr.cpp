// horocorr: conformal metrics on sphere domains and the hypersurfaces of
// hyperbolic space they correspond to.

#include <CLI11.hpp>

#include <iostream>
#include <optional>

#include "horocorr/catalog.hpp"
#include "horocorr/errors.hpp"
#include "horocorr/parallel.hpp"
#include "horocorr/run.hpp"

namespace {

// Flags shared by build, analyze and flow. Every flag is optional so that a
// config file can supply the value and a flag given on the command line wins.
struct RunFlags {
  std::string config;
  std::optional<std::string> metric;
  std::optional<int> n;
  std::optional<std::string> resolution;
  std::optional<double> margin;
  std::optional<std::string> times;
  std::optional<std::string> analyses;
  std::optional<double> model_tol;
  std::optional<double> beta_threshold;
  std::optional<double> bound;
  bool upper_only = false;
  std::optional<double> immersion_margin;
  std::optional<std::string> output;
  std::optional<std::string> report;
  std::optional<std::string> obj_dir;
  bool timings = false;

  void attach(CLI::App* app) {
    app->add_option("--config", config, "config/v1 JSON file");
    app->add_option("--metric", metric, "catalog id: constant[:c], flat-punctured, cylindric, height:a");
    app->add_option("--n", n, "sphere dimension (>= 2)");
    app->add_option("--resolution", resolution, "grid counts, longitudes first, e.g. 64x64");
    app->add_option("--margin", margin, "distance kept from the domain boundary");
    app->add_option("--t", times, "flow time, or lattice a,b,c / start:stop:step");
    app->add_option("--analyses", analyses,
                    "comma list: curvature,convexity,flow_invariance,embeddedness,beta_scan,realizability,"
                    "expectations,all");
    app->add_option("--model-tol", model_tol, "model membership tolerance");
    app->add_option("--beta-threshold", beta_threshold, "beta divergence threshold");
    app->add_option("--bound", bound, "realizability bound on |lambda|");
    app->add_flag("--upper-only", upper_only, "realizability bound on lambda from above only");
    app->add_option("--immersion-margin", immersion_margin, "gap below 1/2 used when t is chosen automatically");
    app->add_option("-o,--output", output, "mesh output prefix (build)");
    app->add_option("--report", report, "report path (stdout when absent)");
    app->add_option("--obj-dir", obj_dir, "directory for per-t OBJ files (flow)");
    app->add_flag("--timings", timings, "add wall-clock timings to the report");
  }

  horocorr::RunConfig resolve() const {
    using namespace horocorr;
    RunConfig c = config.empty() ? RunConfig{} : load_config(config);
    if (metric) c.metric = *metric;
    if (n) c.n = *n;
    if (resolution) c.resolution = parse_resolution(*resolution);
    if (margin) c.margin = *margin;
    if (times) c.times = parse_times(*times);
    if (analyses) c.analyses = parse_analyses(*analyses);
    if (model_tol) c.tolerances.model = *model_tol;
    if (beta_threshold) c.tolerances.beta_threshold = *beta_threshold;
    if (bound) c.tolerances.realizability_bound = *bound;
    if (upper_only) c.tolerances.realizability_side = BoundSide::UpperOnly;
    if (immersion_margin) c.tolerances.immersion_margin = *immersion_margin;
    if (output) c.output = *output;
    if (report) c.report = *report;
    if (obj_dir) c.obj_dir = *obj_dir;
    c.timings = timings;
    return c;
  }
};

}  // namespace

int main(int argc, char** argv) {
  using namespace horocorr;
  CLI::App app{"Conformal metrics on sphere domains and hypersurfaces of hyperbolic space"};
  app.require_subcommand(1);
  int threads = 0;
  app.add_option("--threads", threads, "worker threads (default: HOROCORR_THREADS or all cores)");

  RunFlags build_flags, analyze_flags, flow_flags;
  auto* build = app.add_subcommand("build", "write the OBJ mesh and JSON sidecar of one surface");
  build_flags.attach(build);
  auto* analyze = app.add_subcommand("analyze", "curvature, convexity, beta and realizability report");
  analyze_flags.attach(analyze);
  auto* flow = app.add_subcommand("flow", "normal flow over a time lattice and embeddedness table");
  flow_flags.attach(flow);

  auto* verify = app.add_subcommand("verify", "run the acceptance suite");
  std::string filter;
  bool json = false, verify_timings = false;
  verify->add_option("--filter", filter, "criterion id or tag");
  verify->add_flag("--json", json, "machine-readable results");
  verify->add_flag("--timings", verify_timings, "show per-criterion wall-clock time");

  auto* catalog = app.add_subcommand("catalog", "list or show catalog entries");
  catalog->require_subcommand(1);
  catalog->add_subcommand("list", "all catalog entries");
  auto* show = catalog->add_subcommand("show", "one entry with its expectations");
  std::string show_id;
  int show_n = 2;
  show->add_option("id", show_id, "catalog id")->required();
  show->add_option("--n", show_n, "sphere dimension");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfig;
  }
  if (threads < 0) {
    std::cerr << "config error: --threads must be >= 0\n";
    return kExitConfig;
  }
  if (threads > 0) set_thread_count(threads);

  return run_guarded(
      [&]() -> int {
        if (build->parsed()) return cmd_build(build_flags.resolve(), std::cout);
        if (analyze->parsed()) return cmd_analyze(analyze_flags.resolve(), std::cout);
        if (flow->parsed()) return cmd_flow(flow_flags.resolve(), std::cout);
        if (verify->parsed()) return cmd_verify(filter, json, verify_timings, std::cout);
        if (show->parsed()) return cmd_catalog_show(show_id, show_n, std::cout);
        return cmd_catalog_list(std::cout);
      },
      std::cerr);
}
