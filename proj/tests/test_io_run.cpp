#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "horocorr/errors.hpp"
#include "horocorr/run.hpp"

using namespace horocorr;

namespace {

std::filesystem::path scratch_dir(const std::string& name) {
  auto dir = std::filesystem::temp_directory_path() / ("horocorr_test_" + name);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

}  // namespace

TEST_SUITE("io") {
  TEST_CASE("OBJ is Y-up with 9 significant digits and 1-based faces") {
    BallMesh mesh;
    mesh.vertices = {{0.1, 0.2, 0.3}, {0.123456789012, -0.5, 0.0}, {0, 0, 0}};
    mesh.triangles = {{0, 1, 2}};
    std::ostringstream out;
    write_obj(out, mesh);
    CHECK(out.str() == "v 0.1 0.3 -0.2\nv 0.123456789 0 0.5\nv 0 0 -0\nf 1 2 3\n");
  }

  TEST_CASE("sidecar carries per-node data and nulls off the stencil") {
    const auto e = catalog_entry("flat-punctured");
    const auto mesh = with_fd_curvatures(metric_to_hypersurface(e.metric, 0.0, build_grid(e.metric.domain, {16, 16})));
    const auto doc = mesh_sidecar(mesh);
    CHECK(doc["schema"] == kSidecarSchema);
    REQUIRE(doc["nodes"].size() == mesh.size());
    CHECK(doc["nodes"][0]["kappas"].is_null());
    bool found = false;
    for (const auto& node : doc["nodes"]) {
      if (node["kappas"].is_null()) continue;
      found = true;
      CHECK(node["kappas"][0].get<double>() == doctest::Approx(1.0).epsilon(1e-3));
      CHECK(std::abs(node["lambdas"][1].get<double>()) < 1e-3);
    }
    CHECK(found);
  }
}

TEST_SUITE("cli") {
  TEST_CASE("parsing helpers") {
    CHECK(parse_resolution("64x32") == std::vector<int>{64, 32});
    CHECK_THROWS_AS(parse_resolution("64by32"), ConfigError);
    CHECK(parse_times("0,1,2.5") == std::vector<double>{0.0, 1.0, 2.5});
    CHECK(parse_times("1:3:1") == std::vector<double>{1.0, 2.0, 3.0});
    CHECK_THROWS_AS(parse_times("1:3"), ConfigError);
    const auto a = parse_analyses("beta_scan,realizability");
    CHECK(a.beta_scan);
    CHECK_FALSE(a.curvature);
    CHECK_THROWS_AS(parse_analyses("magic"), ConfigError);
  }

  TEST_CASE("config files") {
    const auto doc = Json::parse(R"({"schema": "config/v1", "metric": {"kind": "constant", "parameters": {"c": 0.25}},
                                     "n": 2, "resolution": [16, 16], "t": [1, 2],
                                     "analyses": {"beta_scan": true}, "tolerances": {"model": 1e-8}})");
    const auto c = config_from_json(doc);
    CHECK(c.metric == "constant:0.25");
    CHECK(c.times == std::vector<double>{1.0, 2.0});
    CHECK(c.analyses.beta_scan);
    CHECK(c.tolerances.model == 1e-8);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"schema": "config/v9"})")), ConfigError);
    CHECK_THROWS_AS(config_from_json(Json::parse(R"({"n": "two"})")), ConfigError);
    RunConfig bad;
    bad.resolution = {3, 8};
    CHECK_THROWS_AS(validate(bad), ConfigError);
    bad.resolution = {};
    bad.metric = "unknown";
    CHECK_THROWS_AS(validate(bad), ConfigError);
  }

  TEST_CASE("build writes OBJ and sidecar; degenerate build fails with exit 3") {
    const auto dir = scratch_dir("build");
    RunConfig c;
    c.metric = "flat-punctured";
    c.times = {0.0};
    c.resolution = {32, 32};
    c.output = (dir / "flat").string();
    std::ostringstream out, err;
    CHECK(run_guarded([&] { return cmd_build(c, out); }, err) == kExitOk);
    CHECK(std::filesystem::exists(dir / "flat.obj"));
    std::ifstream sidecar(dir / "flat.json");
    const auto doc = Json::parse(sidecar);
    CHECK(doc["flow_time"] == 0.0);

    c.metric = "constant:0";
    CHECK(run_guarded([&] { return cmd_build(c, out); }, err) == kExitMathDomain);
    CHECK(err.str().find("eigenvalues reach 1/2") != std::string::npos);
    c.metric = "bogus";
    CHECK(run_guarded([&] { return cmd_build(c, out); }, err) == kExitConfig);
  }

  TEST_CASE("analyze reports") {
    RunConfig c;
    c.metric = "flat-punctured";
    c.resolution = {32, 32};
    c.times = {0.0};
    std::ostringstream out;
    CHECK(cmd_analyze(c, out) == kExitOk);
    const auto doc = Json::parse(out.str());
    CHECK(doc["schema"] == kReportSchema);
    const auto& surface = doc["surfaces"][0];
    CHECK(surface["convexity"]["verdict"] == "UniformlyWeaklyHC");
    CHECK(surface["convexity"]["kappa0"].get<double>() == doctest::Approx(1.0).epsilon(1e-3));
    CHECK(surface["curvature"]["lambda_kappa"]["max_discrepancy"].get<double>() < 1e-3);
    CHECK_FALSE(doc.contains("timings_seconds"));

    RunConfig b;
    b.metric = "cylindric";
    b.resolution = {16, 16};
    b.analyses = parse_analyses("beta_scan");
    std::ostringstream bout;
    cmd_analyze(b, bout);
    const auto bdoc = Json::parse(bout.str());
    REQUIRE(bdoc["beta_scan"].size() == 2);
    CHECK(bdoc["beta_scan"][0]["verdict"] == "Diverging");
    CHECK(bdoc["beta_scan"][1]["verdict"] == "Diverging");

    RunConfig r;
    r.metric = "constant:0";
    r.resolution = {16, 16};
    r.analyses = parse_analyses("realizability");
    r.tolerances.realizability_bound = 0.5;
    std::ostringstream rout;
    cmd_analyze(r, rout);
    const auto rdoc = Json::parse(rout.str());
    CHECK(rdoc["realizability"]["verdict"] == "WithinBound");
    CHECK(rdoc["realizability"]["max_lambda"].get<double>() == doctest::Approx(0.5));
    CHECK(rdoc["realizability"]["boundary_of_bound"] == true);
  }

  TEST_CASE("reports are deterministic") {
    RunConfig c;
    c.metric = "cylindric";
    c.resolution = {24, 24};
    c.analyses = parse_analyses("all");
    c.times = {3.0};
    std::ostringstream a, b;
    cmd_analyze(c, a);
    cmd_analyze(c, b);
    CHECK(a.str() == b.str());
  }

  TEST_CASE("flow reports") {
    RunConfig c;
    c.metric = "flat-punctured";
    c.resolution = {24, 24};
    c.times = {0.0, 1.0};
    std::ostringstream out;
    CHECK(cmd_flow(c, out) == kExitOk);
    const auto doc = Json::parse(out.str());
    CHECK(doc["embedding"]["first_embedded_t"] == 0.0);

    RunConfig s;
    s.metric = "constant:0";
    s.resolution = {32, 32};
    s.times = {1.0, 2.0};
    std::ostringstream sout;
    cmd_flow(s, sout);
    for (const auto& step : Json::parse(sout.str())["steps"])
      CHECK(step["riccati_vs_fd"]["max_discrepancy"].get<double>() < 1e-3);

    RunConfig y;
    y.metric = "cylindric";
    y.resolution = {32, 16};
    y.times = {1.0, 2.0, 3.0};
    std::ostringstream yout;
    cmd_flow(y, yout);
    CHECK(Json::parse(yout.str())["embedding"]["monotone"] == true);
  }

  TEST_CASE("catalog output") {
    std::ostringstream out;
    CHECK(cmd_catalog_list(out) == kExitOk);
    CHECK(Json::parse(out.str())["entries"].size() == catalog_ids().size());
    std::ostringstream show;
    CHECK(cmd_catalog_show("cylindric", 2, show) == kExitOk);
    CHECK(Json::parse(show.str())["expectations"].size() > 0);
  }
}
