#pragma once

#include <iosfwd>
#include <string>

#include <json.hpp>

#include "horocorr/catalog.hpp"
#include "horocorr/flow.hpp"

namespace horocorr {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSidecarSchema = "mesh-sidecar/v1";
inline constexpr const char* kReportSchema = "report/v1";
inline constexpr const char* kConfigSchema = "config/v1";
inline constexpr const char* kToolVersion = "0.1.0";

/// ASCII OBJ with Y-up ball coordinates (b1, b3, -b2), 9 significant digits.
void write_obj(std::ostream& out, const BallMesh& mesh, const std::string& comment = {});
void write_obj_file(const std::string& path, const BallMesh& mesh, const std::string& comment = {});

/// Per-node support, gauss, kappas and lambdas; kappas are null at stencil
/// boundary nodes.
Json mesh_sidecar(const HypersurfaceMesh& mesh);

void write_json_file(const std::string& path, const Json& doc);

Json to_json(const SpherePoint& p);
Json to_json(const RealizabilityReport& r);
Json to_json(const DivergenceScan& s);
Json to_json(const ConvexityVerdict& v);
Json to_json(const DictionaryDiscrepancy& d);
Json to_json(const EmbeddingVerdict& v);
Json to_json(const EmbeddingTimeResult& r);
Json to_json(const FlowInvarianceReport& r);
Json to_json(const GradientBoundConstants& c);
Json to_json(const Expectation& e);
Json to_json(const CatalogEntry& e);

}  // namespace horocorr
