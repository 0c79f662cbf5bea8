#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "hetcache/model.hpp"
#include "hetcache/rational.hpp"

namespace hetcache {

/// Cache split: fraction beta of each user's memory holds common-file
/// subfiles, the rest holds own-group unique-file subfiles. t_c and t_u
/// are the induced per-class replication degrees K*beta*M/Nc and
/// K*(1-beta)*M/(G*Nu), clamped into [0,K] and [0,K/G].
struct SplitParams {
  double beta = 0.0;
  double t_c = 0.0;
  double t_u = 0.0;

  static SplitParams from_beta(const SystemConfig& cfg, double beta);

  bool integral() const;
  int t_c_int() const;
  int t_u_int() const;
};

/// Feasible beta range [max(0,(M-Nu)/M), min(1,Nc/M)] for M>0; {0,0} at
/// M=0 where the split is irrelevant.
std::pair<double, double> beta_interval(const SystemConfig& cfg);

/// All integer (t_c,t_u) pairs exhausting the memory: Nc*t_c + G*Nu*t_u
/// = K*M, with 0 <= t_c <= K and 0 <= t_u <= K/G. Requires K*M integral.
std::vector<SplitParams> integer_splits(const SystemConfig& cfg);

/// Split placement: common files cut into C(K,t_c) equal subfiles indexed
/// by t_c-subsets of all users, group-g unique files into C(K/G,t_u)
/// subfiles indexed by t_u-subsets within the group. Requires integer
/// t_c, t_u (tolerance 1e-6 on the beta-induced values).
PlacementSpec place(const SystemConfig& cfg, double beta);

/// Same placement with pseudo-random file contents (one byte per bit)
/// sliced into subfile payloads. B must be positive and divisible by both
/// subpacketizations.
PlacementSpec place_seeded(const SystemConfig& cfg, double beta, std::uint64_t seed);

/// Reference file contents used by place_seeded, for decode checks.
std::vector<std::uint8_t> library_file_bits(const SystemConfig& cfg, const FileId& f,
                                            std::uint64_t seed);

enum class Phase : std::uint8_t { common, unique };

struct Message {
  std::uint32_t subset = 0;  // target users S
  Phase phase = Phase::common;
  Rational size;  // in units of B
  std::vector<std::uint8_t> payload;
};

struct Transmission {
  std::vector<Message> messages;
  Rational total_load;
};

/// XOR multicast delivery. Common phase: one message per (t_c+1)-subset
/// of users holding at least one common requester, XORing each such
/// requester's missing subfile. Unique phase: per group, one message per
/// in-group (t_u+1)-subset holding at least one unique requester.
/// Subsets made entirely of users not requesting in the phase's class are
/// omitted; that omission is what the subtracted terms in the load
/// formula count.
Transmission deliver(const PlacementSpec& placement, const Demand& d,
                     const SplitParams& params);

struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Reconstructs user k's requested file bit-for-bit from its cache
/// contents plus the transmission, by XOR cancellation. Throws
/// DecodeError naming the user and missing piece on failure.
std::vector<std::uint8_t> decode(int user, const PlacementSpec& placement,
                                 const Transmission& tx, const Demand& d,
                                 const SplitParams& params);

/// Worst-case delivery load for the split beta when alpha users per group
/// request unique files:
///   [C(K,t_c+1) - C(G*alpha,t_c+1)]/C(K,t_c)
///   + G*[C(K/G,t_u+1) - C(K/G-alpha,t_u+1)]/C(K/G,t_u)
/// evaluated with the Gamma-extended binomial for fractional t.
double load_formula(const SystemConfig& cfg, double beta, double alpha);

/// Same expression over the integers, exact.
Rational load_formula_exact(const SystemConfig& cfg, int t_c, int t_u, int alpha);

/// max over integer alpha in [0, K/G] of load_formula.
std::pair<int, double> worst_alpha_load(const SystemConfig& cfg, double beta);

struct AchievableResult {
  double beta = 0.0;
  double value = 0.0;
  int alpha = 0;
};

/// min over feasible beta of max over alpha of load_formula; inner max
/// exact over integers, outer min by grid plus golden-section refinement
/// to |dbeta| <= 1e-9.
AchievableResult achievable_bound(const SystemConfig& cfg);

}  // namespace hetcache
