#pragma once

#include <functional>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "horocorr/conformal.hpp"
#include "horocorr/io.hpp"

namespace horocorr {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitConfig = 2, kExitMathDomain = 3 };

struct Analyses {
  bool curvature = true;
  bool convexity = true;
  bool flow_invariance = false;
  bool embeddedness = false;
  bool beta_scan = false;
  bool realizability = false;
  bool expectations = false;
};

struct Tolerances {
  double model = kModelTolerance;
  double beta_threshold = kDefaultBetaThreshold;
  double realizability_bound = 0.5;
  BoundSide realizability_side = BoundSide::TwoSided;
  /// Gap below 1/2 required of e^{-2t} lambda when t is chosen automatically.
  double immersion_margin = 0.05;
};

/// Everything a command needs; read from a config/v1 JSON file and/or flags.
struct RunConfig {
  std::string metric = "flat-punctured";
  int n = 2;
  std::vector<int> resolution;  // longitudes first; empty = default
  std::optional<double> margin;  // empty = catalog default
  std::vector<double> times;     // one t, or a lattice for `flow`
  Analyses analyses;
  Tolerances tolerances;
  std::string output = "horocorr_mesh";  // build: <output>.obj and <output>.json
  std::string report;                    // analyze/flow: report path, stdout when empty
  std::string obj_dir;                   // flow: per-t OBJ files when set
  bool timings = false;
};

/// Parses a config/v1 document. Throws ConfigError.
RunConfig config_from_json(const Json& doc);
RunConfig load_config(const std::string& path);
Json config_to_json(const RunConfig& c);

/// "64x64" -> {64, 64}. Throws ConfigError.
std::vector<int> parse_resolution(const std::string& text);
/// "0,1,2" or "0:3:1" (start:stop:step, inclusive) -> times. Throws ConfigError.
std::vector<double> parse_times(const std::string& text);
/// "curvature,convexity,..." -> flags. Throws ConfigError.
Analyses parse_analyses(const std::string& text);

/// Checks the config invariants. Throws ConfigError.
void validate(const RunConfig& c);

int cmd_build(const RunConfig& c, std::ostream& out);
int cmd_analyze(const RunConfig& c, std::ostream& out);
int cmd_flow(const RunConfig& c, std::ostream& out);
int cmd_verify(const std::string& filter, bool json, bool timings, std::ostream& out);
int cmd_catalog_list(std::ostream& out);
int cmd_catalog_show(const std::string& id, int n, std::ostream& out);

/// Runs `command`, mapping ConfigError and DimensionError to exit 2 and
/// MathDomainError to exit 3 with the message written to `err`.
int run_guarded(const std::function<int()>& command, std::ostream& err);

}  // namespace horocorr
