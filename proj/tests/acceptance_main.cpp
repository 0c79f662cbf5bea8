// Acceptance harness: one pass/fail line per gate, nonzero exit when any
// gate fails. Gates pin the library's headline guarantees at fixed
// tolerances, so failures here mean the artifact regressed.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include "hetcache/analysis.hpp"
#include "hetcache/combinatorics.hpp"
#include "hetcache/converse.hpp"
#include "hetcache/model.hpp"
#include "hetcache/scheme.hpp"

using namespace hetcache;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Gate {
  std::string name;
  bool pass = false;
  std::string detail;
};

std::vector<SystemConfig> sweep_configs() {
  return {{4, 2, 4, 2, 0, 0}, {8, 2, 8, 4, 0, 0}, {12, 3, 12, 4, 0, 0}, {16, 4, 16, 4, 0, 0}};
}

std::vector<SystemConfig> desk_configs(double M, std::int64_t B) {
  return {{4, 2, 4, 2, M, B}, {2, 1, 2, 2, M, B}, {2, 2, 2, 1, M, B}};
}

Gate gate_sandwich() {
  Gate g{"factor-two sandwich, 4 configs x 101 memory points", true, ""};
  auto t0 = Clock::now();
  double worst_gap = 0.0;
  for (SystemConfig cfg : sweep_configs()) {
    double top = double(cfg.Nc) + double(cfg.Nu);
    std::vector<double> grid;
    for (int i = 0; i <= 100; ++i) grid.push_back(top * i / 100.0);
    for (const SweepRow& r : gap_sweep(cfg, grid)) {
      if (!(r.achievable >= r.converse * (1 - 1e-9)) ||
          !(r.achievable <= 2 * r.converse * (1 + 1e-9) + 1e-15)) {
        g.pass = false;
        g.detail = "violated at K=" + std::to_string(cfg.K) + " M=" + std::to_string(r.M);
        return g;
      }
      worst_gap = std::max(worst_gap, r.gap);
    }
  }
  double dt = seconds_since(t0);
  if (dt >= 30.0) {
    g.pass = false;
    g.detail = "runtime " + std::to_string(dt) + "s over budget";
    return g;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "worst gap %.9f, %.1fs", worst_gap, dt);
  g.detail = buf;
  return g;
}

Gate gate_endpoints() {
  Gate g{"exact endpoints: load K at M=0, load 0 at full memory", true, ""};
  for (SystemConfig cfg : sweep_configs()) {
    cfg.M = 0.0;
    if (achievable_bound(cfg).value != double(cfg.K) ||
        converse_bound(cfg).value != double(cfg.K)) {
      g.pass = false;
      g.detail = "M=0 endpoint not exact at K=" + std::to_string(cfg.K);
      return g;
    }
    cfg.M = double(cfg.Nc) + double(cfg.Nu);
    if (achievable_bound(cfg).value != 0.0 || converse_bound(cfg).value != 0.0) {
      g.pass = false;
      g.detail = "full-memory endpoint not exact at K=" + std::to_string(cfg.K);
      return g;
    }
  }
  g.detail = "all 16 endpoint values exact";
  return g;
}

Gate gate_formula_vs_simulation() {
  Gate g{"delivered load equals the formula on symmetric demands", true, ""};
  SystemConfig cfg{4, 2, 4, 2, 2.0, 0};
  SplitParams sp = SplitParams::from_beta(cfg, 0.5);
  PlacementSpec p = place(cfg, 0.5);
  bool nine_fourths_seen = false;
  long checked = 0;
  for (const Demand& d : enumerate_demands(cfg, DemandClass::all)) {
    if (!d.group_symmetric(cfg)) continue;
    int alpha = d.alpha_profile(cfg)[0];
    Rational sim = deliver(p, d, sp).total_load;
    if (sim != load_formula_exact(cfg, 1, 1, alpha)) {
      g.pass = false;
      g.detail = "mismatch on " + d.str();
      return g;
    }
    if (alpha == 1 && sim == Rational(9, 4)) nine_fourths_seen = true;
    ++checked;
  }
  if (!nine_fourths_seen) {
    g.pass = false;
    g.detail = "load 9/4 never observed at alpha=1";
    return g;
  }
  g.detail = std::to_string(checked) + " symmetric demands, all equal, 9/4 observed";
  return g;
}

Gate gate_decodability() {
  Gate g{"bit-exact decoding, every demand x split x 3 seeds", true, ""};
  auto t0 = Clock::now();
  long decoded = 0;
  for (SystemConfig cfg : desk_configs(2.0, 2520)) {
    auto demands = enumerate_demands(cfg, DemandClass::all);
    for (const SplitParams& sp : integer_splits(cfg)) {
      for (std::uint64_t seed : {1, 2, 3}) {
        PlacementSpec p = place_seeded(cfg, sp.beta, seed);
        std::vector<std::vector<std::uint8_t>> want(cfg.total_files());
        for (int id = 0; id < cfg.total_files(); ++id)
          want[id] = library_file_bits(cfg, FileId::from_linear(cfg, id), seed);
        for (const Demand& d : demands) {
          Transmission tx = deliver(p, d, sp);
          for (int k = 0; k < cfg.K; ++k) {
            if (decode(k, p, tx, d, sp) != want[d.entries[k].linear(cfg)]) {
              g.pass = false;
              g.detail = "user " + std::to_string(k + 1) + " failed on " + d.str();
              return g;
            }
            ++decoded;
          }
        }
      }
    }
  }
  double dt = seconds_since(t0);
  if (dt >= 60.0) {
    g.pass = false;
    g.detail = "runtime " + std::to_string(dt) + "s over budget";
    return g;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "%ld decodes bit-exact, %.1fs", decoded, dt);
  g.detail = buf;
  return g;
}

Gate gate_counting() {
  Gate g{"counting oracle: averages and appearance counts exact", true, ""};
  for (SystemConfig base : {SystemConfig{2, 1, 2, 2, 0, 0}, SystemConfig{4, 2, 4, 2, 0, 0}}) {
    std::vector<double> memories{0.0, 2.0};
    for (double m : memories) {
      SystemConfig cfg = base;
      cfg.M = m;
      for (const SplitParams& sp : integer_splits(cfg)) {
        CountingReport rep = verify_genie_counting(place(cfg, sp.beta));
        if (!rep.pass) {
          g.pass = false;
          g.detail = "K=" + std::to_string(cfg.K) + " M=" + std::to_string(m) + ": " +
                     rep.first_mismatch;
          return g;
        }
      }
    }
  }
  // Independent spot check: with empty caches on the 2-user single-group
  // instance, the first common file's whole-file piece is needed in all
  // 4 (demand, order) pairs.
  {
    SystemConfig cfg{2, 1, 2, 2, 0.0, 0};
    long count = 0;
    for (const Demand& d : enumerate_demands(cfg, DemandClass::common_only)) {
      std::vector<int> u{0, 1};
      do {
        for (int pos = 0; pos < 2; ++pos)
          if (d.entries[u[pos]] == FileId::make_common(0)) ++count;
      } while (std::next_permutation(u.begin(), u.end()));
    }
    if (count != 4) {
      g.pass = false;
      g.detail = "spot appearance count " + std::to_string(count) + " != 4";
      return g;
    }
  }
  g.detail = "both instances exact, spot count 4 confirmed";
  return g;
}

Gate gate_genie_validity() {
  Gate g{"per-permutation bound never exceeds delivered load", true, ""};
  long checked = 0;
  for (SystemConfig cfg : desk_configs(2.0, 0)) {
    auto demands = enumerate_demands(cfg, DemandClass::all);
    for (const SplitParams& sp : integer_splits(cfg)) {
      PlacementSpec p = place(cfg, sp.beta);
      std::vector<Rational> loads;
      loads.reserve(demands.size());
      for (const Demand& d : demands) loads.push_back(deliver(p, d, sp).total_load);
      std::vector<int> u(cfg.K);
      std::iota(u.begin(), u.end(), 0);
      do {
        for (std::size_t i = 0; i < demands.size(); ++i) {
          if (r_lb(p, demands[i], u) > loads[i]) {
            g.pass = false;
            g.detail = "violation on " + demands[i].str();
            return g;
          }
          ++checked;
        }
      } while (std::next_permutation(u.begin(), u.end()));
    }
  }
  g.detail = std::to_string(checked) + " (demand, order) pairs, no violation";
  return g;
}

Gate gate_jensen() {
  Gate g{"profile sums dominate kernels at the mean, 1000+ draws", true, ""};
  std::mt19937_64 rng(987654321);
  std::uniform_real_distribution<double> unif(0.0, 1.0);
  long draws = 0;
  for (auto [K, G] : std::vector<std::pair<int, int>>{{4, 2}, {6, 3}, {8, 2}}) {
    const int s = K / G;
    std::vector<std::pair<int, int>> ti;
    for (int t = 0; t <= K; ++t)
      for (int i = std::max(0, t - K + s); i <= std::min(t, s); ++i) ti.push_back({t, i});
    for (int trial = 0; trial < 400; ++trial, ++draws) {
      std::vector<double> xc(K + 1);
      double sum = 0;
      for (auto& v : xc) sum += v = -std::log(unif(rng));
      for (auto& v : xc) v /= sum;
      double mean = 0, counted = 0;
      for (int t = 0; t <= K; ++t) {
        mean += t * xc[t];
        counted += common_kernel_d(t, K) * xc[t];
      }
      if (counted < common_kernel_d(mean, K) - 1e-12) {
        g.pass = false;
        g.detail = "common Jensen violated at draw " + std::to_string(draws);
        return g;
      }
      std::vector<double> w(ti.size());
      sum = 0;
      for (auto& v : w) sum += v = -std::log(unif(rng));
      for (auto& v : w) v = v / sum * G;
      std::vector<double> xu(K + 1, 0.0);
      double exact_i = 0;
      for (std::size_t j = 0; j < ti.size(); ++j) {
        exact_i += double(s - ti[j].second) / (ti[j].first + 1) * w[j];
        xu[ti[j].first] += w[j] / G;
      }
      double relaxed = 0, umean = 0;
      for (int t = 0; t <= K; ++t) {
        relaxed += unique_kernel_ext_d(t, K, G) * xu[t];
        umean += t * xu[t];
      }
      if (exact_i < relaxed - 1e-12 || relaxed < unique_kernel_ext_d(umean, K, G) - 1e-12) {
        g.pass = false;
        g.detail = "unique relaxation violated at draw " + std::to_string(draws);
        return g;
      }
    }
  }
  g.detail = std::to_string(draws) + " draws, no violation";
  return g;
}

Gate gate_optimizer() {
  Gate g{"optimizer matches a fine grid oracle and passes convexity", true, ""};
  SystemConfig cfg{4, 2, 4, 2, 2.0, 0};
  ConverseResult r = converse_bound(cfg);
  // independent oracle: brute grid at step 1e-4 on the hand-simplified
  // objective (t_c = 2b, t_u = 2(1-b) at this instance)
  double oracle = 1e300;
  for (int i = 0; i <= 10000; ++i) {
    double b = i * 1e-4;
    double tc = 2.0 * b, tu = 2.0 * (1.0 - b);
    double v = 0.5 * ((4.0 - tc) / (tc + 1.0) + 2.0 * (2.0 - tu) / (tu + 1.0));
    oracle = std::min(oracle, v);
  }
  if (std::abs(r.value - oracle) > 1e-6) {
    g.pass = false;
    g.detail = "value " + std::to_string(r.value) + " vs oracle " + std::to_string(oracle);
    return g;
  }
  if (!r.convex) {
    g.pass = false;
    g.detail = "convexity scan failed";
    return g;
  }
  char buf[96];
  std::snprintf(buf, sizeof buf, "value %.10f, oracle gap %.2e, convex", r.value,
                std::abs(r.value - oracle));
  g.detail = buf;
  return g;
}

}  // namespace

int main() {
  std::vector<Gate> gates;
  gates.push_back(gate_sandwich());
  gates.push_back(gate_endpoints());
  gates.push_back(gate_formula_vs_simulation());
  gates.push_back(gate_decodability());
  gates.push_back(gate_counting());
  gates.push_back(gate_genie_validity());
  gates.push_back(gate_jensen());
  gates.push_back(gate_optimizer());

  int failed = 0;
  for (std::size_t i = 0; i < gates.size(); ++i) {
    const Gate& g = gates[i];
    std::printf("[%zu] %s: %s (%s)\n", i + 1, g.name.c_str(), g.pass ? "PASS" : "FAIL",
                g.detail.c_str());
    failed += !g.pass;
  }
  if (failed) std::printf("%d gate(s) failed\n", failed);
  return failed ? 1 : 0;
}
