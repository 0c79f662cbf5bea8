#include "hetcache/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <stdexcept>

#include "hetcache/converse.hpp"
#include "hetcache/scheme.hpp"

namespace hetcache {

std::vector<double> default_m_grid(const SystemConfig& cfg, int points) {
  require_valid(cfg);
  const double top = double(cfg.Nc) + double(cfg.Nu);
  std::vector<double> grid;
  for (int i = 0; i < points; ++i)
    grid.push_back(top * double(i) / double(points - 1));
  const int s = cfg.users_per_group();
  for (int a = 0; a <= cfg.K; ++a)
    for (int b = 0; b <= s; ++b) {
      double m = (double(cfg.Nc) * a + double(cfg.G) * cfg.Nu * b) / cfg.K;
      if (m <= top) grid.push_back(m);
    }
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

std::vector<SweepRow> gap_sweep(const SystemConfig& cfg, const std::vector<double>& grid) {
  std::vector<SweepRow> rows;
  rows.reserve(grid.size());
  for (double m : grid) {
    SystemConfig c = cfg;
    c.M = m;
    require_valid(c);
    AchievableResult ach = achievable_bound(c);
    ConverseResult conv = converse_bound(c);
    SweepRow row;
    row.M = m;
    row.beta_ach = ach.beta;
    row.achievable = ach.value;
    row.beta_conv = conv.beta;
    row.converse = conv.value;
    row.gap = conv.value > 0.0 ? ach.value / conv.value : 1.0;
    rows.push_back(row);
  }
  return rows;
}

double fixed_beta_gap(const SystemConfig& cfg, double M) {
  SystemConfig c = cfg;
  c.M = M;
  require_valid(c);
  ConverseResult conv = converse_bound(c);
  if (conv.value <= 0.0) return 1.0;
  return worst_alpha_load(c, conv.beta).second / conv.value;
}

WorstCaseResult worst_case_bruteforce(const SystemConfig& cfg, double beta, double cap) {
  PlacementSpec p = place(cfg, beta);
  SplitParams sp = SplitParams::from_beta(cfg, beta);
  auto demands = enumerate_demands(cfg, DemandClass::all, cap);
  if (demands.empty()) throw std::logic_error("empty demand class");
  WorstCaseResult best;
  best.load = Rational(-1);
  for (const auto& d : demands) {
    Rational load = deliver(p, d, sp).total_load;
    if (load > best.load) {
      best.load = load;
      best.demand = d;
    }
  }
  best.alpha = best.demand.alpha_profile(cfg);
  return best;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "M,beta_ach,achievable,beta_conv,converse,gap\n";
  char buf[160];
  for (const auto& r : rows) {
    std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g,%.12g,%.12g\n", r.M,
                  r.beta_ach, r.achievable, r.beta_conv, r.converse, r.gap);
    out += buf;
  }
  return out;
}

}  // namespace hetcache
