#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>

#include <json.hpp>

#include "fbm/diagnostics.hpp"
#include "fbm/scenarios.hpp"

namespace fbm {

using Json = nlohmann::ordered_json;

inline constexpr const char* kFrontHeader = "t,s1,s2,s1_dot,s2_dot";
inline constexpr const char* kSnapshotHeader = "R,r_u,u,r_v,v";

void write_fronts_csv(std::ostream& out, const Trajectory& traj);
void write_snapshot_csv(std::ostream& out, const SimState& state);

Json to_json(const SpeedReport& report);
Json to_json(const SegregationMetrics& metrics);
Json to_json(const Outcome& outcome);
Json to_json(const ModelParams& params);

/// c*, s*, R*, the three thresholds and the regime classification.
Json constants_report(const ModelParams& params);

/// Writes `text` to `path`, creating parent directories; throws Io.
void write_file(const std::filesystem::path& path, const std::string& text);

}  // namespace fbm
