#include "hetcache/scheme.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "hetcache/combinatorics.hpp"
#include "hetcache/optimize.hpp"

namespace hetcache {

namespace {

constexpr double kIntTol = 1e-6;

double clamp(double x, double lo, double hi) { return std::min(hi, std::max(lo, x)); }

bool near_int(double x) { return std::abs(x - std::round(x)) <= kIntTol; }

/// All masks over `width` bits with popcount `count`, ascending.
std::vector<std::uint32_t> masks_of_size(int width, int count) {
  std::vector<std::uint32_t> out;
  if (count < 0 || count > width) return out;
  for (std::uint32_t m = 0; m < (1u << width); ++m)
    if (std::popcount(m) == count) out.push_back(m);
  return out;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

void xor_into(std::vector<std::uint8_t>& acc, const std::vector<std::uint8_t>& bits) {
  if (acc.size() < bits.size()) acc.resize(bits.size(), 0);
  for (std::size_t i = 0; i < bits.size(); ++i) acc[i] ^= bits[i];
}

}  // namespace

SplitParams SplitParams::from_beta(const SystemConfig& cfg, double beta) {
  require_valid(cfg);
  if (!(beta >= -1e-12 && beta <= 1.0 + 1e-12))
    throw std::domain_error("beta outside [0,1]");
  beta = clamp(beta, 0.0, 1.0);
  auto [lo, hi] = beta_interval(cfg);
  if (beta < lo - 1e-9 || beta > hi + 1e-9)
    throw std::domain_error("beta outside feasible interval");
  beta = clamp(beta, lo, hi);
  SplitParams sp;
  sp.beta = beta;
  sp.t_c = clamp(cfg.K * beta * cfg.M / cfg.Nc, 0.0, double(cfg.K));
  sp.t_u = clamp(cfg.K * (1.0 - beta) * cfg.M / (cfg.G * cfg.Nu), 0.0,
                 double(cfg.users_per_group()));
  return sp;
}

bool SplitParams::integral() const { return near_int(t_c) && near_int(t_u); }
int SplitParams::t_c_int() const { return int(std::lround(t_c)); }
int SplitParams::t_u_int() const { return int(std::lround(t_u)); }

std::pair<double, double> beta_interval(const SystemConfig& cfg) {
  require_valid(cfg);
  if (cfg.M == 0.0) return {0.0, 0.0};
  // lo written as (M-Nu)/M, not 1-Nu/M: at M = Nc+Nu the two ends then
  // round to the same double and the interval stays nonempty.
  double lo = std::max(0.0, (cfg.M - cfg.Nu) / cfg.M);
  double hi = std::min(1.0, cfg.Nc / cfg.M);
  return {lo, std::max(lo, hi)};
}

std::vector<SplitParams> integer_splits(const SystemConfig& cfg) {
  require_valid(cfg);
  double km = cfg.K * cfg.M;
  if (!near_int(km))
    throw std::domain_error("integer splits need K*M integral");
  std::int64_t budget = std::llround(km);
  const int s = cfg.users_per_group();
  std::vector<SplitParams> out;
  for (int tc = 0; tc <= cfg.K; ++tc) {
    std::int64_t rem = budget - std::int64_t(cfg.Nc) * tc;
    if (rem < 0) break;
    std::int64_t unit = std::int64_t(cfg.G) * cfg.Nu;
    if (rem % unit != 0) continue;
    std::int64_t tu = rem / unit;
    if (tu > s) continue;
    SplitParams sp;
    sp.t_c = double(tc);
    sp.t_u = double(tu);
    sp.beta = budget == 0 ? 0.0 : double(cfg.Nc) * tc / double(budget);
    out.push_back(sp);
  }
  return out;
}

PlacementSpec place(const SystemConfig& cfg, double beta) {
  SplitParams sp = SplitParams::from_beta(cfg, beta);
  if (!sp.integral()) {
    std::ostringstream os;
    os << "split not integral: t_c=" << sp.t_c << " t_u=" << sp.t_u;
    throw std::invalid_argument(os.str());
  }
  const int tc = sp.t_c_int(), tu = sp.t_u_int(), s = cfg.users_per_group();
  if (cfg.K > 30) throw std::invalid_argument("bitmask placement supports K <= 30");

  PlacementSpec p;
  p.cfg = cfg;
  p.sizes.resize(cfg.total_files());

  Rational csize(1, std::int64_t(binom_u64(cfg.K, tc)));
  auto cmasks = masks_of_size(cfg.K, tc);
  for (int n = 0; n < cfg.Nc; ++n) {
    auto& m = p.sizes[FileId::make_common(n).linear(cfg)];
    for (auto mask : cmasks) m[mask] = csize;
  }
  Rational usize(1, std::int64_t(binom_u64(s, tu)));
  auto umasks = masks_of_size(s, tu);
  for (int g = 0; g < cfg.G; ++g)
    for (int n = 0; n < cfg.Nu; ++n) {
      auto& m = p.sizes[FileId::make_unique(g, n).linear(cfg)];
      for (auto mask : umasks) m[mask << (g * s)] = usize;
    }
  return p;
}

std::vector<std::uint8_t> library_file_bits(const SystemConfig& cfg, const FileId& f,
                                            std::uint64_t seed) {
  if (cfg.B <= 0) throw std::invalid_argument("file bits need B > 0");
  std::mt19937_64 rng(splitmix64(seed) ^ splitmix64(0x100 + f.linear(cfg)));
  std::vector<std::uint8_t> bits(cfg.B);
  for (auto& b : bits) b = std::uint8_t(rng() >> 63);
  return bits;
}

PlacementSpec place_seeded(const SystemConfig& cfg, double beta, std::uint64_t seed) {
  PlacementSpec p = place(cfg, beta);
  p.payloads.resize(p.sizes.size());
  for (int id = 0; id < cfg.total_files(); ++id) {
    FileId f = FileId::from_linear(cfg, id);
    auto bits = library_file_bits(cfg, f, seed);
    std::int64_t pos = 0;
    for (const auto& [mask, sz] : p.sizes[id]) {
      Rational len = sz * Rational(cfg.B);
      if (len.den() != 1)
        throw std::invalid_argument("B not divisible by subpacketization");
      std::int64_t n = len.num();
      p.payloads[id][mask].assign(bits.begin() + pos, bits.begin() + pos + n);
      pos += n;
    }
  }
  return p;
}

Transmission deliver(const PlacementSpec& placement, const Demand& d,
                     const SplitParams& params) {
  const SystemConfig& cfg = placement.cfg;
  auto bad = d.validate(cfg);
  if (!bad.empty()) throw std::invalid_argument("deliver: " + bad.front());
  if (!params.integral()) throw std::invalid_argument("deliver needs integer split");
  const int tc = params.t_c_int(), tu = params.t_u_int(), s = cfg.users_per_group();

  std::uint32_t common_req = 0, unique_req = 0;
  for (int k = 0; k < cfg.K; ++k)
    (d.entries[k].kind == FileKind::common ? common_req : unique_req) |= 1u << k;

  Transmission tx;
  tx.total_load = Rational(0);
  const bool sim = placement.has_payloads();

  auto emit = [&](std::uint32_t subset, Phase phase, Rational size,
                  std::uint32_t contributors) {
    Message msg;
    msg.subset = subset;
    msg.phase = phase;
    msg.size = size;
    if (sim) {
      for (int k = 0; k < cfg.K; ++k) {
        if (!(contributors >> k & 1u)) continue;
        const FileId& f = d.entries[k];
        xor_into(msg.payload, placement.payloads[f.linear(cfg)].at(subset & ~(1u << k)));
      }
    }
    tx.total_load += size;
    tx.messages.push_back(std::move(msg));
  };

  if (tc < cfg.K) {
    Rational size(1, std::int64_t(binom_u64(cfg.K, tc)));
    for (auto subset : masks_of_size(cfg.K, tc + 1))
      if (subset & common_req) emit(subset, Phase::common, size, subset & common_req);
  }
  if (tu < s) {
    Rational size(1, std::int64_t(binom_u64(s, tu)));
    auto local = masks_of_size(s, tu + 1);
    for (int g = 0; g < cfg.G; ++g)
      for (auto m : local) {
        std::uint32_t subset = m << (g * s);
        if (subset & unique_req) emit(subset, Phase::unique, size, subset & unique_req);
      }
  }
  return tx;
}

std::vector<std::uint8_t> decode(int user, const PlacementSpec& placement,
                                 const Transmission& tx, const Demand& d,
                                 const SplitParams& params) {
  const SystemConfig& cfg = placement.cfg;
  if (!placement.has_payloads()) throw std::logic_error("decode needs payloads");
  const int tc = params.t_c_int(), tu = params.t_u_int(), s = cfg.users_per_group();
  const FileId want = d.entries[user];
  const bool common = want.kind == FileKind::common;
  const Phase phase = common ? Phase::common : Phase::unique;

  std::map<std::uint32_t, const Message*> by_subset;
  for (const auto& m : tx.messages)
    if (m.phase == phase) by_subset[m.subset] = &m;

  // Cache reads go through this guard: user must be in the subfile's
  // caching set, otherwise the bits are not locally available.
  auto cached = [&](const FileId& f, std::uint32_t mask) -> const std::vector<std::uint8_t>& {
    if (!(mask >> user & 1u))
      throw DecodeError("user " + std::to_string(user + 1) + " does not cache " +
                        f.str() + " " + subset_str(mask, cfg.K));
    return placement.payloads.at(f.linear(cfg)).at(mask);
  };

  std::uint32_t base = common ? 0 : std::uint32_t(cfg.group_of(user) * s);
  auto masks = common ? masks_of_size(cfg.K, tc) : masks_of_size(s, tu);

  std::vector<std::uint8_t> file;
  for (auto m : masks) {
    std::uint32_t mask = m << base;
    if (mask >> user & 1u) {
      const auto& bits = cached(want, mask);
      file.insert(file.end(), bits.begin(), bits.end());
      continue;
    }
    std::uint32_t subset = mask | (1u << user);
    auto it = by_subset.find(subset);
    if (it == by_subset.end())
      throw DecodeError("user " + std::to_string(user + 1) + ": no message for " +
                        want.str() + " " + subset_str(mask, cfg.K));
    std::vector<std::uint8_t> bits = it->second->payload;
    for (int k = 0; k < cfg.K; ++k) {
      if (k == user || !(subset >> k & 1u)) continue;
      const FileId& fk = d.entries[k];
      bool contributes = (fk.kind == FileKind::common) == common;
      if (contributes) xor_into(bits, cached(fk, subset & ~(1u << k)));
    }
    bits.resize(placement.payloads.at(want.linear(cfg)).at(mask).size());
    file.insert(file.end(), bits.begin(), bits.end());
  }
  return file;
}

double load_formula(const SystemConfig& cfg, double beta, double alpha) {
  const int s = cfg.users_per_group();
  if (!(alpha >= 0.0 && alpha <= double(s)))
    throw std::domain_error("alpha outside [0, K/G]");
  SplitParams sp = SplitParams::from_beta(cfg, beta);
  double tc = sp.t_c, tu = sp.t_u;
  double common = (gen_binom(cfg.K, tc + 1) - gen_binom(cfg.G * alpha, tc + 1)) /
                  gen_binom(cfg.K, tc);
  double unique = cfg.G *
                  (gen_binom(s, tu + 1) - gen_binom(s - alpha, tu + 1)) /
                  gen_binom(s, tu);
  return common + unique;
}

Rational load_formula_exact(const SystemConfig& cfg, int t_c, int t_u, int alpha) {
  const int s = cfg.users_per_group();
  if (t_c < 0 || t_c > cfg.K || t_u < 0 || t_u > s)
    throw std::domain_error("split out of range");
  if (alpha < 0 || alpha > s) throw std::domain_error("alpha outside [0, K/G]");
  Rational common(std::int64_t(binom_u64(cfg.K, t_c + 1)) -
                      std::int64_t(binom_u64(cfg.G * alpha, t_c + 1)),
                  std::int64_t(binom_u64(cfg.K, t_c)));
  Rational unique(std::int64_t(binom_u64(s, t_u + 1)) -
                      std::int64_t(binom_u64(s - alpha, t_u + 1)),
                  std::int64_t(binom_u64(s, t_u)));
  return common + Rational(cfg.G) * unique;
}

std::pair<int, double> worst_alpha_load(const SystemConfig& cfg, double beta) {
  const int s = cfg.users_per_group();
  int best_a = 0;
  double best = -1.0;
  for (int a = 0; a <= s; ++a) {
    double v = load_formula(cfg, beta, a);
    if (v > best) {
      best = v;
      best_a = a;
    }
  }
  return {best_a, best};
}

AchievableResult achievable_bound(const SystemConfig& cfg) {
  require_valid(cfg);
  if (cfg.M == 0.0) return {0.0, double(cfg.K), 0};
  if (cfg.M >= double(cfg.Nc) + double(cfg.Nu))
    return {cfg.Nc / cfg.M, 0.0, 0};
  auto [lo, hi] = beta_interval(cfg);
  auto objective = [&](double b) { return worst_alpha_load(cfg, b).second; };
  MinimizeResult r = minimize_grid_golden(objective, lo, hi);
  return {r.x, r.value, worst_alpha_load(cfg, r.x).first};
}

}  // namespace hetcache
