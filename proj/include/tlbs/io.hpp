#pragma once

#include <filesystem>
#include <string>

#include <json.hpp>

#include "tlbs/aco.hpp"
#include "tlbs/energy_sim.hpp"
#include "tlbs/oracle.hpp"
#include "tlbs/scenario.hpp"
#include "tlbs/solution.hpp"

namespace tlbs::io {

using nlohmann::json;

json to_json(const Scenario& s);
Scenario scenario_from_json(const json& j);

json to_json(const Solution& s);
Solution solution_from_json(const json& j);

/// Unknown keys are rejected so that typos do not silently fall back to
/// defaults.
json to_json(const SolverParams& p);
SolverParams params_from_json(const json& j);

json to_json(const ValidationReport& r);
ValidationReport report_from_json(const json& j);

/// Solution-shaped document: one path per UAV (START then ROI_VISIT),
/// `stations` holding the cells under the continuous station points, plus
/// `station_points` in meters and the per-UAV breakdown.
json to_json(const OracleSolution& o, const Scenario& s);

json read_json_file(const std::filesystem::path& path);
std::string read_text_file(const std::filesystem::path& path);
/// Writes through a temporary sibling and renames it into place.
void write_file_atomic(const std::filesystem::path& path, const std::string& contents);
void write_json_file(const std::filesystem::path& path, const json& j);

}  // namespace tlbs::io
