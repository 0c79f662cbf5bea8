#include "hetcache/converse.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "hetcache/combinatorics.hpp"
#include "hetcache/optimize.hpp"
#include "hetcache/scheme.hpp"

namespace hetcache {

namespace {

void check_perm(const std::vector<int>& u, int K) {
  if (int(u.size()) != K) throw std::invalid_argument("permutation must have K entries");
  std::uint32_t seen = 0;
  for (int k : u) {
    if (k < 0 || k >= K || (seen >> k & 1u))
      throw std::invalid_argument("not a permutation of the users");
    seen |= 1u << k;
  }
}

}  // namespace

GenieCache genie_cache(const PlacementSpec& placement, const Demand& d,
                       const std::vector<int>& u) {
  const SystemConfig& cfg = placement.cfg;
  check_perm(u, cfg.K);
  auto bad = d.validate(cfg);
  if (!bad.empty()) throw std::invalid_argument("genie_cache: " + bad.front());

  // Position of each user in u, to find the first visit into a mask.
  std::vector<int> pos(cfg.K);
  for (int p = 0; p < cfg.K; ++p) pos[u[p]] = p;

  GenieCache z;
  z.retained.resize(cfg.total_files());
  z.total = Rational(0);
  for (int id = 0; id < cfg.total_files(); ++id) {
    FileId f = FileId::from_linear(cfg, id);
    for (const auto& [mask, sz] : placement.sizes[id]) {
      if (mask == 0 || sz.is_zero()) continue;
      int first = cfg.K;
      for (int k = 0; k < cfg.K; ++k)
        if (mask >> k & 1u) first = std::min(first, pos[k]);
      // Kept unless one of the users visited before the covering cache
      // had already requested this very file.
      bool dropped = false;
      for (int p = 0; p < first && !dropped; ++p) dropped = d.entries[u[p]] == f;
      if (dropped) continue;
      z.retained[id][mask] = sz;
      z.total += sz;
    }
  }
  return z;
}

Rational r_lb(const PlacementSpec& placement, const Demand& d,
              const std::vector<int>& u) {
  const SystemConfig& cfg = placement.cfg;
  check_perm(u, cfg.K);
  auto bad = d.validate(cfg);
  if (!bad.empty()) throw std::invalid_argument("r_lb: " + bad.front());

  Rational total(0);
  std::uint32_t visited = 0;
  for (int p = 0; p < cfg.K; ++p) {
    visited |= 1u << u[p];
    const FileId& f = d.entries[u[p]];
    for (const auto& [mask, sz] : placement.sizes[f.linear(cfg)])
      if (!(mask & visited)) total += sz;
  }
  return total;
}

MemoryProfile memory_profiles(const PlacementSpec& placement) {
  const SystemConfig& cfg = placement.cfg;
  auto bad = check_placement(placement);
  if (!bad.empty()) throw std::invalid_argument("memory_profiles: " + bad.front());

  MemoryProfile p;
  p.K = cfg.K;
  p.G = cfg.G;
  p.x_c.assign(cfg.K + 1, Rational(0));
  p.x_u.assign(cfg.K + 1, Rational(0));

  for (int id = 0; id < cfg.total_files(); ++id) {
    FileId f = FileId::from_linear(cfg, id);
    for (const auto& [mask, sz] : placement.sizes[id]) {
      int t = std::popcount(mask);
      if (f.kind == FileKind::common) {
        p.x_c[t] += sz / Rational(cfg.Nc);
      } else {
        int i = std::popcount(mask & cfg.group_mask(f.group));
        p.x_u_ti[{t, i}] += sz / Rational(cfg.Nu);
      }
    }
  }
  for (const auto& [ti, mass] : p.x_u_ti) p.x_u[ti.first] += mass / Rational(cfg.G);

  if (cfg.M > 0.0) {
    Rational first_moment(0);
    for (int t = 0; t <= cfg.K; ++t) first_moment += Rational(t) * p.x_c[t];
    double raw = cfg.Nc * first_moment.to_double() / (cfg.K * cfg.M);
    p.beta_hat = std::min(1.0, std::max(0.0, raw));
  }
  return p;
}

Rational common_kernel(int t, int K) { return Rational(K - t, t + 1); }

Rational unique_kernel_ext(int t, int K, int G) {
  int s = K / G;
  return t >= s ? Rational(0) : Rational(std::int64_t(G) * (s - t), t + 1);
}

Rational unique_kernel_i(int t, int i, int K, int G) {
  return Rational(K / G - i, t + 1);
}

double common_kernel_d(double t, int K) { return (K - t) / (t + 1.0); }

double unique_kernel_ext_d(double t, int K, int G) {
  double s = double(K) / G;
  return t >= s ? 0.0 : G * (s - t) / (t + 1.0);
}

Rational counted_common_bound_exact(const MemoryProfile& p) {
  Rational sum(0);
  for (int t = 0; t <= p.K; ++t) sum += common_kernel(t, p.K) * p.x_c[t];
  return sum;
}

double counted_common_bound(const MemoryProfile& p) {
  return counted_common_bound_exact(p).to_double();
}

UniqueBounds counted_unique_bound_exact(const MemoryProfile& p) {
  UniqueBounds b{Rational(0), Rational(0)};
  for (const auto& [ti, mass] : p.x_u_ti)
    b.exact_i += unique_kernel_i(ti.first, ti.second, p.K, p.G) * mass;
  for (int t = 0; t <= p.K; ++t) b.relaxed += unique_kernel_ext(t, p.K, p.G) * p.x_u[t];
  return b;
}

std::pair<double, double> counted_unique_bound(const MemoryProfile& p) {
  UniqueBounds b = counted_unique_bound_exact(p);
  return {b.exact_i.to_double(), b.relaxed.to_double()};
}

namespace {

/// Brute-force side of the counting check for one demand class: averages
/// r_lb over class x permutations and tallies how often each subfile is
/// still needed.
struct BruteResult {
  Rational avg;
  std::int64_t pairs = 0;
  std::vector<std::map<std::uint32_t, std::int64_t>> appearances;
};

BruteResult brute_class(const PlacementSpec& placement, DemandClass cls, double cap) {
  const SystemConfig& cfg = placement.cfg;
  auto demands = enumerate_demands(cfg, cls, cap);
  BruteResult r;
  r.avg = Rational(0);
  r.appearances.resize(cfg.total_files());

  std::vector<int> u(cfg.K);
  std::iota(u.begin(), u.end(), 0);
  Rational sum(0);
  do {
    std::uint32_t visited;
    for (const auto& d : demands) {
      visited = 0;
      for (int p = 0; p < cfg.K; ++p) {
        visited |= 1u << u[p];
        const FileId& f = d.entries[u[p]];
        int id = f.linear(cfg);
        for (const auto& [mask, sz] : placement.sizes[id])
          if (!(mask & visited)) {
            sum += sz;
            ++r.appearances[id][mask];
          }
      }
      ++r.pairs;
    }
  } while (std::next_permutation(u.begin(), u.end()));
  r.avg = sum / Rational(r.pairs);
  return r;
}

}  // namespace

CountingReport verify_genie_counting(const PlacementSpec& placement, double cap) {
  const SystemConfig& cfg = placement.cfg;
  auto bad = check_placement(placement);
  if (!bad.empty()) throw std::invalid_argument("verify_genie_counting: " + bad.front());
  const int s = cfg.users_per_group();

  MemoryProfile profile = memory_profiles(placement);
  CountingReport rep;
  rep.common_expected = counted_common_bound_exact(profile);
  rep.unique_expected = counted_unique_bound_exact(profile).exact_i;

  auto fail = [&](const std::string& what) {
    if (rep.first_mismatch.empty()) rep.first_mismatch = what;
  };

  BruteResult bc = brute_class(placement, DemandClass::common_only, cap);
  rep.common_pairs = bc.pairs;
  rep.common_avg = bc.avg;
  if (bc.avg != rep.common_expected)
    fail("common average " + bc.avg.str() + " != " + rep.common_expected.str());

  BruteResult bu = brute_class(placement, DemandClass::unique_only, cap);
  rep.unique_pairs = bu.pairs;
  rep.unique_avg = bu.avg;
  if (bu.avg != rep.unique_expected)
    fail("unique average " + bu.avg.str() + " != " + rep.unique_expected.str());

  // Appearance counts against the closed forms. A common subfile on a
  // t'-set is needed (K-t')! t' ! C(K,t'+1) / Nc times per class member
  // share; unique subfiles carry the in-group count i instead.
  double dc = demand_count(cfg, DemandClass::common_only);
  double du = demand_count(cfg, DemandClass::unique_only);
  for (int id = 0; id < cfg.total_files(); ++id) {
    FileId f = FileId::from_linear(cfg, id);
    for (const auto& [mask, sz] : placement.sizes[id]) {
      if (sz.is_zero()) continue;
      int t = std::popcount(mask);
      ++rep.appearance_checks;
      // A subfile cached by every user is never missing, so its count is
      // zero and the permutation factor does not apply.
      Rational perms(t == cfg.K ? 0 : std::int64_t(perm_count(cfg.K, t)));
      if (f.kind == FileKind::common) {
        Rational expect = Rational::from_double(dc) * perms * Rational(cfg.K - t, cfg.Nc);
        auto it = bc.appearances[id].find(mask);
        Rational got(it == bc.appearances[id].end() ? 0 : it->second);
        if (got != expect)
          fail("appearance count for " + f.str() + " " + subset_str(mask, cfg.K) +
               ": " + got.str() + " != " + expect.str());
      } else {
        int i = std::popcount(mask & cfg.group_mask(f.group));
        Rational expect = Rational::from_double(du) * perms * Rational(s - i, cfg.Nu);
        auto it = bu.appearances[id].find(mask);
        Rational got(it == bu.appearances[id].end() ? 0 : it->second);
        if (got != expect)
          fail("appearance count for " + f.str() + " " + subset_str(mask, cfg.K) +
               ": " + got.str() + " != " + expect.str());
      }
    }
  }
  rep.pass = rep.first_mismatch.empty();
  return rep;
}

ConverseResult converse_bound(const SystemConfig& cfg) {
  require_valid(cfg);
  if (cfg.M == 0.0) return {0.0, double(cfg.K), true};
  if (cfg.M >= double(cfg.Nc) + double(cfg.Nu)) return {cfg.Nc / cfg.M, 0.0, true};

  auto objective = [&](double b) {
    SplitParams sp = SplitParams::from_beta(cfg, b);
    return 0.5 * (f_common(sp.t_c, cfg.K) + f_unique(sp.t_u, cfg.K, cfg.G));
  };
  auto [lo, hi] = beta_interval(cfg);
  MinimizeResult r = minimize_grid_golden(objective, lo, hi);
  return {r.x, r.value, convexity_scan(objective, lo, hi)};
}

}  // namespace hetcache
