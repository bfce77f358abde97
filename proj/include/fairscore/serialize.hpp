// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <filesystem>
#include <string>
#include <variant>

#include <json.hpp>

#include "fairscore/barycenter.hpp"
#include "fairscore/fairness.hpp"
#include "fairscore/transport.hpp"

namespace fairscore {

// Either mitigation transform, as stored in a transform file.
using AnyTransform = std::variant<ScalingTransform, BarycenterTransform>;

// Schema tags written into every document so files are self-describing.
inline constexpr const char* kTransformSchema = "fairscore.transform/1";
inline constexpr const char* kTransportMapSchema = "fairscore.transport-map/1";
inline constexpr const char* kReportSchema = "fairscore.report/1";

nlohmann::json to_json(const ScalingTransform& t);
nlohmann::json to_json(const BarycenterTransform& t);
nlohmann::json to_json(const TransportMap& map);
nlohmann::json to_json(const FairnessReport& report);

ScalingTransform scaling_from_json(const nlohmann::json& j);
BarycenterTransform barycenter_from_json(const nlohmann::json& j);
TransportMap transport_map_from_json(const nlohmann::json& j);
FairnessReport report_from_json(const nlohmann::json& j);

// Dispatches on the "kind" field; malformed documents throw
// ValidationError.
AnyTransform transform_from_json(const nlohmann::json& j);

// Applies either transform kind; the clamped flag is always false for a
// barycenter transform.
ScaledScore apply_transform(const AnyTransform& t, double score,
                            const std::string& group);

// Sorted group labels of either transform kind.
std::vector<std::string> transform_labels(const AnyTransform& t);

// Canonical text form used for every JSON file the tools write: sorted
// keys (the parser's object order), two-space indent, trailing newline.
std::string dump_json(const nlohmann::json& j);

// Throws ValidationError on unreadable files or syntax errors.
nlohmann::json load_json_file(const std::filesystem::path& path);

void save_json_file(const nlohmann::json& j,
                    const std::filesystem::path& path);

}  // namespace fairscore
