#include "hetcache/model.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <sstream>
#include <stdexcept>

#include "hetcache/combinatorics.hpp"

namespace hetcache {

std::vector<std::string> validate_config(const SystemConfig& cfg) {
  std::vector<std::string> bad;
  if (cfg.K < 1) bad.push_back("K must be >= 1");
  if (cfg.G < 1) bad.push_back("G must be >= 1");
  if (cfg.K >= 1 && cfg.G >= 1) {
    if (cfg.K % cfg.G != 0) {
      bad.push_back("G must divide K");
    } else {
      if (cfg.Nu < cfg.users_per_group())
        bad.push_back("Nu >= K/G violated");
    }
  }
  if (cfg.K >= 1 && cfg.Nc < cfg.K) bad.push_back("Nc >= K violated");
  if (!(cfg.M >= 0.0)) bad.push_back("M must be >= 0");
  if (!(cfg.M <= double(cfg.Nc) + double(cfg.Nu)))
    bad.push_back("M must be <= Nc + Nu");
  if (cfg.B < 0) bad.push_back("B must be >= 0");
  return bad;
}

void require_valid(const SystemConfig& cfg) {
  auto bad = validate_config(cfg);
  if (bad.empty()) return;
  std::string msg = "invalid config:";
  for (const auto& s : bad) msg += " " + s + ";";
  throw std::invalid_argument(msg);
}

std::string FileId::str() const {
  std::ostringstream os;
  if (kind == FileKind::common)
    os << 'c' << index + 1;
  else
    os << 'u' << group + 1 << '.' << index + 1;
  return os.str();
}

std::vector<std::string> Demand::validate(const SystemConfig& cfg) const {
  std::vector<std::string> bad;
  if (int(entries.size()) != cfg.K) {
    bad.push_back("demand must list exactly K entries");
    return bad;
  }
  for (int k = 0; k < cfg.K; ++k) {
    const FileId& f = entries[k];
    if (f.kind == FileKind::common) {
      if (f.index < 0 || f.index >= cfg.Nc)
        bad.push_back("user " + std::to_string(k + 1) + ": common index out of range");
    } else {
      if (f.index < 0 || f.index >= cfg.Nu)
        bad.push_back("user " + std::to_string(k + 1) + ": unique index out of range");
      if (f.group != cfg.group_of(k))
        bad.push_back("user " + std::to_string(k + 1) + ": unique request outside own group");
    }
  }
  if (!bad.empty()) return bad;
  for (int a = 0; a < cfg.K; ++a)
    for (int b = a + 1; b < cfg.K; ++b)
      if (entries[a] == entries[b])
        bad.push_back("users " + std::to_string(a + 1) + " and " + std::to_string(b + 1) +
                      " request the same file");
  return bad;
}

std::vector<int> Demand::alpha_profile(const SystemConfig& cfg) const {
  std::vector<int> alpha(cfg.G, 0);
  for (int k = 0; k < cfg.K; ++k)
    if (entries[k].kind == FileKind::unique) ++alpha[cfg.group_of(k)];
  return alpha;
}

bool Demand::group_symmetric(const SystemConfig& cfg) const {
  auto a = alpha_profile(cfg);
  return std::all_of(a.begin(), a.end(), [&](int v) { return v == a[0]; });
}

std::string Demand::str() const {
  std::string s = "[";
  for (std::size_t i = 0; i < entries.size(); ++i) {
    if (i) s += ' ';
    s += entries[i].str();
  }
  return s + "]";
}

namespace {

double falling(double n, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= n - i;
  return r;
}

}  // namespace

double demand_count(const SystemConfig& cfg, DemandClass cls) {
  const int s = cfg.users_per_group();
  if (cls == DemandClass::common_only) return falling(cfg.Nc, cfg.K);
  if (cls == DemandClass::unique_only) {
    double per = double(binom_u64(cfg.Nu, s)) * falling(s, s);
    return std::pow(per, cfg.G);
  }
  // Per group, a users take unique files: C(s,a)*P(Nu,a) ways, leaving
  // s-a common requesters tracked by the polynomial variable.
  std::vector<double> q(s + 1, 0.0);
  for (int a = 0; a <= s; ++a)
    q[s - a] = double(binom_u64(s, a)) * falling(cfg.Nu, a);
  std::vector<double> poly{1.0};
  for (int g = 0; g < cfg.G; ++g) {
    std::vector<double> next(poly.size() + s, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (int j = 0; j <= s; ++j) next[i + j] += poly[i] * q[j];
    poly = std::move(next);
  }
  double total = 0.0;
  for (std::size_t c = 0; c < poly.size(); ++c)
    total += poly[c] * falling(cfg.Nc, int(c));
  return total;
}

std::vector<Demand> enumerate_demands(const SystemConfig& cfg, DemandClass cls,
                                      double cap) {
  require_valid(cfg);
  double count = demand_count(cfg, cls);
  if (!(count <= cap)) {
    std::ostringstream os;
    os << "demand class has " << count << " elements, above cap " << cap;
    throw std::length_error(os.str());
  }
  // Per-user option lists in lexicographic order: common files by index,
  // then own-group unique files by index.
  std::vector<std::vector<FileId>> options(cfg.K);
  for (int k = 0; k < cfg.K; ++k) {
    if (cls != DemandClass::unique_only)
      for (int n = 0; n < cfg.Nc; ++n)
        options[k].push_back(FileId::make_common(n));
    if (cls != DemandClass::common_only)
      for (int n = 0; n < cfg.Nu; ++n)
        options[k].push_back(FileId::make_unique(cfg.group_of(k), n));
  }
  std::vector<Demand> out;
  std::vector<bool> used(cfg.total_files(), false);
  Demand cur;
  cur.entries.resize(cfg.K);
  std::function<void(int)> rec = [&](int k) {
    if (k == cfg.K) {
      out.push_back(cur);
      return;
    }
    for (const FileId& f : options[k]) {
      int id = f.linear(cfg);
      if (used[id]) continue;
      used[id] = true;
      cur.entries[k] = f;
      rec(k + 1);
      used[id] = false;
    }
  };
  rec(0);
  return out;
}

Rational PlacementSpec::size_of(const FileId& f, std::uint32_t mask) const {
  int id = f.linear(cfg);
  const auto& m = sizes.at(id);
  auto it = m.find(mask);
  return it == m.end() ? Rational(0) : it->second;
}

Rational PlacementSpec::user_load(int user) const {
  Rational total(0);
  for (const auto& file : sizes)
    for (const auto& [mask, sz] : file)
      if (mask >> user & 1u) total += sz;
  return total;
}

std::vector<std::string> check_placement(const PlacementSpec& p) {
  std::vector<std::string> bad;
  const SystemConfig& cfg = p.cfg;
  if (int(p.sizes.size()) != cfg.total_files()) {
    bad.push_back("placement must cover all files");
    return bad;
  }
  const std::uint32_t all = cfg.K >= 32 ? ~0u : (1u << cfg.K) - 1u;
  for (int id = 0; id < cfg.total_files(); ++id) {
    FileId f = FileId::from_linear(cfg, id);
    Rational sum(0);
    for (const auto& [mask, sz] : p.sizes[id]) {
      if (mask & ~all)
        bad.push_back("file " + f.str() + ": subset mask outside user range");
      if (sz < Rational(0))
        bad.push_back("file " + f.str() + ": negative subfile size");
      sum += sz;
    }
    if (sum != Rational(1))
      bad.push_back("file " + f.str() + ": subfile sizes sum to " + sum.str() +
                    ", partition requires 1");
  }
  Rational mem = Rational::from_double(cfg.M);
  for (int k = 0; k < cfg.K; ++k) {
    Rational load = p.user_load(k);
    if (load > mem)
      bad.push_back("user " + std::to_string(k + 1) + ": cache holds " + load.str() +
                    " file units, above M");
  }
  if (p.has_payloads()) {
    if (p.payloads.size() != p.sizes.size()) {
      bad.push_back("payload table must cover all files");
      return bad;
    }
    for (int id = 0; id < cfg.total_files(); ++id) {
      FileId f = FileId::from_linear(cfg, id);
      for (const auto& [mask, sz] : p.sizes[id]) {
        auto it = p.payloads[id].find(mask);
        std::int64_t want = 0;
        Rational bits = sz * Rational(cfg.B);
        if (bits.den() != 1) {
          bad.push_back("file " + f.str() + ": B not divisible by subpacketization");
          continue;
        }
        want = bits.num();
        std::int64_t got = it == p.payloads[id].end() ? 0 : std::int64_t(it->second.size());
        if (got != want)
          bad.push_back("file " + f.str() + " subset " + subset_str(mask, cfg.K) +
                        ": payload holds " + std::to_string(got) + " bits, size says " +
                        std::to_string(want));
      }
    }
  }
  return bad;
}

std::string subset_str(std::uint32_t mask, int K) {
  std::string s = "{";
  bool first = true;
  for (int k = 0; k < K; ++k) {
    if (!(mask >> k & 1u)) continue;
    if (!first) s += ',';
    s += std::to_string(k + 1);
    first = false;
  }
  return s + "}";
}

}  // namespace hetcache
