#pragma once

#include <string>

#include <json.hpp>

#include "hetcache/converse.hpp"
#include "hetcache/model.hpp"

namespace hetcache {

/// JSON keys: K, G, Nc, Nu, M, B.
nlohmann::json config_to_json(const SystemConfig& cfg);
SystemConfig config_from_json(const nlohmann::json& j);

/// Demands serialize as arrays of {user, kind, index} with 1-based user
/// and index; unique requests resolve their group from the user.
nlohmann::json demand_to_json(const Demand& d);
Demand demand_from_json(const nlohmann::json& j, const SystemConfig& cfg);

nlohmann::json counting_report_to_json(const CountingReport& rep);

struct Scenario {
  SystemConfig system;
  bool has_grid = false;     // grid list given explicitly (may be empty)
  std::vector<double> grid;  // used when has_grid
  int grid_points = 101;     // default-grid resolution otherwise
  std::uint64_t seed = 1;
  bool simulate = false;
};

/// {"system": {...}, "grid": [..] or count, "seed": u64,
///  "mode": "analytic"|"simulate"}; grid/seed/mode optional.
Scenario scenario_from_json(const nlohmann::json& j);
Scenario load_scenario(const std::string& path);

}  // namespace hetcache
