#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "hetcache/rational.hpp"

namespace hetcache {

/// System parameters: K users in G equal groups, Nc common files, Nu
/// unique files per group, cache size M in file units, file size B in
/// bits (simulation only; 0 means analytic-only).
struct SystemConfig {
  int K = 0;
  int G = 0;
  int Nc = 0;
  int Nu = 0;
  double M = 0.0;
  std::int64_t B = 0;

  int users_per_group() const { return K / G; }
  int total_files() const { return Nc + G * Nu; }
  /// Users are 0-based; groups are contiguous blocks of K/G users.
  int group_of(int user) const { return user / users_per_group(); }
  std::uint32_t group_mask(int g) const {
    return ((1u << users_per_group()) - 1u) << (g * users_per_group());
  }
};

/// Returns the list of violated constraints; empty means valid.
std::vector<std::string> validate_config(const SystemConfig& cfg);

/// Throws std::invalid_argument with the joined violation report.
void require_valid(const SystemConfig& cfg);

enum class FileKind : std::uint8_t { common, unique };

/// Identifies one library file: a common file by index, or a unique file
/// by (group, index). Indices and groups are 0-based.
struct FileId {
  FileKind kind = FileKind::common;
  int index = 0;
  int group = -1;  // only meaningful for unique files

  static FileId make_common(int n) { return {FileKind::common, n, -1}; }
  static FileId make_unique(int g, int n) { return {FileKind::unique, n, g}; }

  int linear(const SystemConfig& cfg) const {
    return kind == FileKind::common ? index : cfg.Nc + group * cfg.Nu + index;
  }
  static FileId from_linear(const SystemConfig& cfg, int id) {
    if (id < cfg.Nc) return make_common(id);
    id -= cfg.Nc;
    return make_unique(id / cfg.Nu, id % cfg.Nu);
  }

  friend bool operator==(const FileId& a, const FileId& b) {
    if (a.kind != b.kind || a.index != b.index) return false;
    return a.kind == FileKind::common || a.group == b.group;
  }
  friend bool operator!=(const FileId& a, const FileId& b) { return !(a == b); }

  std::string str() const;
};

/// Per-user requests; entry k is the file requested by user k.
struct Demand {
  std::vector<FileId> entries;

  /// Violated demand rules (distinct files, unique requests target the
  /// requester's own group); empty means valid.
  std::vector<std::string> validate(const SystemConfig& cfg) const;

  /// Number of users per group requesting unique files.
  std::vector<int> alpha_profile(const SystemConfig& cfg) const;

  /// True when every group has the same unique-request count.
  bool group_symmetric(const SystemConfig& cfg) const;

  friend bool operator==(const Demand& a, const Demand& b) { return a.entries == b.entries; }
  std::string str() const;
};

enum class DemandClass { all, common_only, unique_only };

/// Exact cardinality of the demand class, saturating at 2^127-ish;
/// returned as double (exact below 2^53).
double demand_count(const SystemConfig& cfg, DemandClass cls);

/// Enumerates the demand class in lexicographic order (per user: common
/// files by index, then own-group unique files by index). Throws
/// std::length_error with the computed cardinality when it exceeds cap.
std::vector<Demand> enumerate_demands(const SystemConfig& cfg, DemandClass cls,
                                      double cap = 1e7);

/// Uncoded placement: per file, a sparse map from caching subset (bitmask
/// over users) to subfile size as an exact fraction of B. Optional bit
/// payloads back bit-exact simulation.
struct PlacementSpec {
  SystemConfig cfg;
  /// sizes[linear file id][mask] = fraction of B; absent mask = 0.
  std::vector<std::map<std::uint32_t, Rational>> sizes;
  /// payload bits per subfile, one byte per bit; filled in simulation mode.
  std::vector<std::map<std::uint32_t, std::vector<std::uint8_t>>> payloads;

  bool has_payloads() const { return !payloads.empty(); }
  Rational size_of(const FileId& f, std::uint32_t mask) const;
  /// Exact per-user cache occupancy in file units.
  Rational user_load(int user) const;
};

/// Shared checker for the partition and per-user memory invariants; also
/// validates payload lengths when present. Empty result means valid.
std::vector<std::string> check_placement(const PlacementSpec& p);

std::string subset_str(std::uint32_t mask, int K);

}  // namespace hetcache
