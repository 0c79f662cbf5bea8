// Command-line front end. Exit codes: 0 success, 1 verification failure,
// 2 invalid config or input, 3 I/O error.
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "hetcache/analysis.hpp"
#include "hetcache/combinatorics.hpp"
#include "hetcache/converse.hpp"
#include "hetcache/json_io.hpp"
#include "hetcache/model.hpp"
#include "hetcache/scheme.hpp"

namespace {

using namespace hetcache;
using nlohmann::json;

std::string fmt12(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", x);
  return buf;
}

int invalid(const std::string& msg) {
  std::fprintf(stderr, "%s\n", msg.c_str());
  return 2;
}

int io_error(const std::string& msg) {
  std::fprintf(stderr, "%s\n", msg.c_str());
  return 3;
}

// 0 on success; 2/3 already reported on stderr.
int read_scenario(const std::string& path, Scenario& out) {
  std::ifstream in(path);
  if (!in) return io_error("cannot open scenario file: " + path);
  json j;
  try {
    in >> j;
    out = scenario_from_json(j);
  } catch (const std::exception& e) {
    return invalid(std::string("bad scenario: ") + e.what());
  }
  std::vector<std::string> issues = validate_config(out.system);
  if (!issues.empty()) {
    for (const auto& s : issues) std::fprintf(stderr, "%s\n", s.c_str());
    return 2;
  }
  return 0;
}

int run_bound(const Scenario& sc) {
  ConverseResult r = converse_bound(sc.system);
  std::printf("value %s\n", fmt12(r.value).c_str());
  std::printf("beta %s\n", fmt12(r.beta).c_str());
  std::printf("convex %s\n", r.convex ? "true" : "false");
  return 0;
}

int run_achievable(const Scenario& sc) {
  AchievableResult r = achievable_bound(sc.system);
  std::printf("value %s\n", fmt12(r.value).c_str());
  std::printf("beta %s\n", fmt12(r.beta).c_str());
  std::printf("alpha %d\n", r.alpha);
  return 0;
}

int run_sweep(const Scenario& sc, const std::string& out_path) {
  const SystemConfig& cfg = sc.system;
  std::vector<double> grid =
      sc.has_grid ? sc.grid : default_m_grid(cfg, sc.grid_points);
  double top = double(cfg.Nc) + double(cfg.Nu);
  for (double m : grid)
    if (!(m >= 0.0) || !(m <= top))
      return invalid("grid memory " + fmt12(m) + " outside [0, " + fmt12(top) + "]");
  std::string csv = sweep_csv(gap_sweep(cfg, grid));
  if (out_path.empty()) {
    std::fputs(csv.c_str(), stdout);
    return 0;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out || !(out << csv)) return io_error("cannot write " + out_path);
  return 0;
}

json tx_to_json(const Transmission& tx, int K) {
  json arr = json::array();
  for (const Message& m : tx.messages) {
    json users = json::array();
    for (int k = 0; k < K; ++k)
      if (m.subset >> k & 1u) users.push_back(k + 1);
    arr.push_back({{"subset", users},
                   {"size_num", m.size.num()},
                   {"size_den", m.size.den()}});
  }
  return arr;
}

int run_simulate(const Scenario& sc, const CLI::Option* beta_opt, double beta_flag,
                 const std::string& dump_path, std::uint64_t seed) {
  const SystemConfig& cfg = sc.system;
  if (!sc.simulate) return invalid("simulate command needs \"mode\": \"simulate\"");

  SplitParams sp;
  try {
    if (beta_opt->count() > 0) {
      sp = SplitParams::from_beta(cfg, beta_flag);
      if (!sp.integral())
        return invalid("beta " + fmt12(beta_flag) + " does not give integer t_c, t_u");
    } else {
      std::vector<SplitParams> splits = integer_splits(cfg);
      if (splits.empty()) return invalid("no integer split exhausts this memory size");
      bool first = true;
      Rational best_load;
      for (const SplitParams& cand : splits) {
        Rational load = worst_case_bruteforce(cfg, cand.beta).load;
        if (first || load < best_load) {
          sp = cand;
          best_load = load;
          first = false;
        }
      }
    }
    WorstCaseResult wc = worst_case_bruteforce(cfg, sp.beta);
    std::printf("beta %s\n", fmt12(sp.beta).c_str());
    std::printf("t_c %d\n", sp.t_c_int());
    std::printf("t_u %d\n", sp.t_u_int());
    std::string alpha;
    for (int a : wc.alpha) alpha += (alpha.empty() ? "" : ",") + std::to_string(a);
    std::printf("alpha %s\n", alpha.c_str());
    std::printf("load %s\n", fmt12(wc.load.to_double()).c_str());
    std::printf("load_exact %s\n", wc.load.str().c_str());
    std::printf("demand %s\n", demand_to_json(wc.demand).dump().c_str());

    // with real file bits, rerun the worst case at bit level and make
    // every user decode it before reporting success
    Transmission tx;
    if (cfg.B > 0) {
      PlacementSpec p = place_seeded(cfg, sp.beta, seed);
      tx = deliver(p, wc.demand, sp);
      for (int k = 0; k < cfg.K; ++k)
        if (decode(k, p, tx, wc.demand, sp) !=
            library_file_bits(cfg, wc.demand.entries[k], seed)) {
          std::fprintf(stderr, "user %d decoded wrong bits\n", k + 1);
          return 1;
        }
      std::printf("decoded %d\n", cfg.K);
    } else {
      tx = deliver(place(cfg, sp.beta), wc.demand, sp);
    }
    if (!dump_path.empty()) {
      std::ofstream out(dump_path, std::ios::binary);
      if (!out || !(out << tx_to_json(tx, cfg.K).dump(2) << "\n"))
        return io_error("cannot write " + dump_path);
    }
  } catch (const std::length_error& e) {
    return invalid(std::string("demand class too large: ") + e.what());
  } catch (const std::domain_error& e) {
    return invalid(e.what());
  } catch (const std::invalid_argument& e) {
    return invalid(e.what());
  }
  return 0;
}

std::int64_t default_bits(const SystemConfig& cfg, const SplitParams& sp) {
  std::int64_t a = std::int64_t(binom_u64(cfg.K, sp.t_c_int()));
  std::int64_t b = std::int64_t(binom_u64(cfg.users_per_group(), sp.t_u_int()));
  return std::lcm(a, b) * 8;
}

int run_verify(const Scenario& sc, std::uint64_t seed, bool corrupt) {
  const SystemConfig& cfg = sc.system;
  if (!sc.simulate) return invalid("verify needs \"mode\": \"simulate\"");

  json report;
  report["seed"] = seed;
  bool all_pass = true;
  try {
    std::vector<SplitParams> splits = integer_splits(cfg);
    if (splits.empty()) return invalid("no integer split exhausts this memory size");

    json decode_rep;
    bool decode_pass = true;
    std::string detail;
    std::int64_t decodes = 0;
    json split_arr = json::array();
    for (const SplitParams& sp : splits) {
      split_arr.push_back(
          {{"t_c", sp.t_c_int()}, {"t_u", sp.t_u_int()}, {"beta", sp.beta}});
      if (!decode_pass) continue;
      SystemConfig cfg_b = cfg;
      cfg_b.B = cfg.B > 0 ? cfg.B : default_bits(cfg, sp);
      PlacementSpec p;
      try {
        p = place_seeded(cfg_b, sp.beta, seed);
      } catch (const std::invalid_argument& e) {
        return invalid(e.what());
      }
      if (corrupt) {
        for (auto& m : p.sizes)
          if (!m.empty()) {
            m.erase(m.begin());
            break;
          }
        for (auto& m : p.payloads)
          if (!m.empty()) {
            m.erase(m.begin());
            break;
          }
      }
      std::vector<std::string> issues = check_placement(p);
      if (!issues.empty()) {
        decode_pass = false;
        detail = issues.front();
        continue;
      }
      std::vector<std::vector<std::uint8_t>> want(cfg_b.total_files());
      for (int id = 0; id < cfg_b.total_files(); ++id)
        want[id] = library_file_bits(cfg_b, FileId::from_linear(cfg_b, id), seed);
      for (const Demand& d : enumerate_demands(cfg_b, DemandClass::all)) {
        Transmission tx = deliver(p, d, sp);
        for (int k = 0; k < cfg_b.K && decode_pass; ++k) {
          try {
            if (decode(k, p, tx, d, sp) != want[d.entries[k].linear(cfg_b)]) {
              decode_pass = false;
              detail = "user " + std::to_string(k + 1) + " decoded wrong bits on " + d.str();
            }
          } catch (const DecodeError& e) {
            decode_pass = false;
            detail = e.what();
          }
          ++decodes;
        }
        if (!decode_pass) break;
      }
    }
    decode_rep["pass"] = decode_pass;
    decode_rep["decodes"] = decodes;
    decode_rep["detail"] = detail;
    report["splits"] = split_arr;
    report["decode"] = decode_rep;
    all_pass = decode_pass;

    json counting_arr = json::array();
    for (const SplitParams& sp : splits) {
      CountingReport rep = verify_genie_counting(place(cfg, sp.beta));
      json jr = counting_report_to_json(rep);
      jr["t_c"] = sp.t_c_int();
      jr["t_u"] = sp.t_u_int();
      counting_arr.push_back(jr);
      all_pass = all_pass && rep.pass;
    }
    report["counting"] = counting_arr;
  } catch (const std::length_error& e) {
    return invalid(std::string("instance too large to verify: ") + e.what());
  } catch (const std::exception& e) {
    return invalid(e.what());
  }
  report["pass"] = all_pass;
  std::printf("%s\n", report.dump(2).c_str());
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coded cache placement, delivery, and bound analyzer"};
  app.require_subcommand(1);

  std::string scenario_path, out_path, dump_path;
  std::uint64_t seed_flag = 0;
  double beta_flag = 0.0;
  bool corrupt = false;

  CLI::App* bound = app.add_subcommand("bound", "optimized lower bound on worst-case load");
  CLI::App* ach = app.add_subcommand("achievable", "optimized upper bound on worst-case load");
  CLI::App* sweep = app.add_subcommand("sweep", "both bounds and their gap over a memory grid");
  CLI::App* sim = app.add_subcommand("simulate", "brute-force worst-case delivery");
  CLI::App* verify = app.add_subcommand("verify", "decode and counting self-checks");
  for (CLI::App* sub : {bound, ach, sweep, sim, verify})
    sub->add_option("--scenario", scenario_path, "scenario JSON path")->required();
  sweep->add_option("--out", out_path, "CSV output path (default stdout)");
  CLI::Option* beta_opt =
      sim->add_option("--beta", beta_flag, "cache split override (default: best integer split)");
  sim->add_option("--dump-tx", dump_path, "write the worst-case transmission as JSON");
  CLI::Option* seed_sim = sim->add_option("--seed", seed_flag, "payload seed override");
  CLI::Option* seed_ver = verify->add_option("--seed", seed_flag, "payload seed override");
  verify->add_flag("--corrupt", corrupt, "drop one subfile before checking (self-test)")
      ->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Scenario sc;
  if (int rc = read_scenario(scenario_path, sc); rc != 0) return rc;

  if (bound->parsed()) return run_bound(sc);
  if (ach->parsed()) return run_achievable(sc);
  if (sweep->parsed()) return run_sweep(sc, out_path);
  if (sim->parsed()) {
    std::uint64_t seed = seed_sim->count() ? seed_flag : sc.seed;
    return run_simulate(sc, beta_opt, beta_flag, dump_path, seed);
  }
  std::uint64_t seed = seed_ver->count() ? seed_flag : sc.seed;
  return run_verify(sc, seed, corrupt);
}
