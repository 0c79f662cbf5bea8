#include "hetcache/json_io.hpp"

#include <fstream>
#include <stdexcept>

namespace hetcache {

using nlohmann::json;

json config_to_json(const SystemConfig& cfg) {
  return json{{"K", cfg.K},   {"G", cfg.G}, {"Nc", cfg.Nc},
              {"Nu", cfg.Nu}, {"M", cfg.M}, {"B", cfg.B}};
}

SystemConfig config_from_json(const json& j) {
  SystemConfig cfg;
  cfg.K = j.at("K").get<int>();
  cfg.G = j.at("G").get<int>();
  cfg.Nc = j.at("Nc").get<int>();
  cfg.Nu = j.at("Nu").get<int>();
  cfg.M = j.at("M").get<double>();
  cfg.B = j.value("B", std::int64_t(0));
  return cfg;
}

json demand_to_json(const Demand& d) {
  json arr = json::array();
  for (std::size_t k = 0; k < d.entries.size(); ++k) {
    const FileId& f = d.entries[k];
    arr.push_back({{"user", int(k) + 1},
                   {"kind", f.kind == FileKind::common ? "common" : "unique"},
                   {"index", f.index + 1}});
  }
  return arr;
}

Demand demand_from_json(const json& j, const SystemConfig& cfg) {
  Demand d;
  d.entries.assign(cfg.K, FileId{});
  if (!j.is_array() || int(j.size()) != cfg.K)
    throw std::invalid_argument("demand JSON must list K entries");
  std::vector<bool> seen(cfg.K, false);
  for (const auto& e : j) {
    int user = e.at("user").get<int>() - 1;
    if (user < 0 || user >= cfg.K || seen[user])
      throw std::invalid_argument("demand JSON: bad or repeated user");
    seen[user] = true;
    std::string kind = e.at("kind").get<std::string>();
    int index = e.at("index").get<int>() - 1;
    if (kind == "common")
      d.entries[user] = FileId::make_common(index);
    else if (kind == "unique")
      d.entries[user] = FileId::make_unique(cfg.group_of(user), index);
    else
      throw std::invalid_argument("demand JSON: kind must be common or unique");
  }
  return d;
}

json counting_report_to_json(const CountingReport& rep) {
  auto cls = [](std::int64_t pairs, const Rational& avg, const Rational& expect) {
    return json{{"pairs_checked", pairs},
                {"average", avg.str()},
                {"expected", expect.str()},
                {"max_abs_error", (avg - expect).is_zero() ? 0 : 1}};
  };
  json j;
  j["pass"] = rep.pass;
  j["common"] = cls(rep.common_pairs, rep.common_avg, rep.common_expected);
  j["unique"] = cls(rep.unique_pairs, rep.unique_avg, rep.unique_expected);
  j["appearance_checks"] = rep.appearance_checks;
  j["first_mismatch"] = rep.first_mismatch;
  return j;
}

Scenario scenario_from_json(const json& j) {
  Scenario sc;
  sc.system = config_from_json(j.at("system"));
  if (j.contains("grid")) {
    const auto& g = j.at("grid");
    if (g.is_array()) {
      sc.grid = g.get<std::vector<double>>();
      sc.has_grid = true;
    } else {
      sc.grid_points = g.get<int>();
    }
  }
  sc.seed = j.value("seed", std::uint64_t(1));
  std::string mode = j.value("mode", std::string("analytic"));
  if (mode != "analytic" && mode != "simulate")
    throw std::invalid_argument("mode must be analytic or simulate");
  sc.simulate = mode == "simulate";
  return sc;
}

Scenario load_scenario(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file " + path);
  json j = json::parse(in);
  return scenario_from_json(j);
}

}  // namespace hetcache
