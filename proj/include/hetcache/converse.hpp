#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "hetcache/model.hpp"
#include "hetcache/rational.hpp"

namespace hetcache {

/// Composite cache handed to the virtual user: walk the permutation u,
/// keep from each visited user's cache only the bits no earlier cache
/// held and no earlier-visited user had requested.
struct GenieCache {
  /// retained[linear file id][mask] = kept fraction of B.
  std::vector<std::map<std::uint32_t, Rational>> retained;
  Rational total;  // file units
};

GenieCache genie_cache(const PlacementSpec& placement, const Demand& d,
                       const std::vector<int>& u);

/// Per-(demand, permutation) load lower bound: position k of u needs its
/// requested file's subfiles cached by none of u_1..u_k; summing those
/// sizes over k lower-bounds any transmission serving d.
Rational r_lb(const PlacementSpec& placement, const Demand& d,
              const std::vector<int>& u);

/// How the placement's bits spread over caching-set sizes. x_c[t'] is the
/// common-file fraction cached by exactly t' users; x_u_ti[(t',i)] the
/// unique-file mass at caching sets of size t' with i members inside the
/// owning group, summed over groups; x_u[t'] = sum_i x_u_ti/G. Both x_c
/// and x_u sum to 1. beta_hat is the common share of used memory,
/// Nc*sum(t'*x_c)/(K*M) clipped to [0,1] (0 when M = 0).
struct MemoryProfile {
  int K = 0;
  int G = 0;
  std::vector<Rational> x_c;
  std::vector<Rational> x_u;
  std::map<std::pair<int, int>, Rational> x_u_ti;
  double beta_hat = 0.0;
};

MemoryProfile memory_profiles(const PlacementSpec& placement);

/// Counting kernels. The unique kernel is extended by zero above K/G so
/// profile sums stay defined for caching sets larger than a group.
Rational common_kernel(int t, int K);                      // (K-t)/(t+1)
Rational unique_kernel_ext(int t, int K, int G);           // G*max(0,K/G-t)/(t+1)
Rational unique_kernel_i(int t, int i, int K, int G);      // (K/G-i)/(t+1)
double common_kernel_d(double t, int K);
double unique_kernel_ext_d(double t, int K, int G);

/// Average worst-case load over all-common demands forced by the
/// placement profile: sum_t' common_kernel(t')*x_c[t'].
Rational counted_common_bound_exact(const MemoryProfile& p);
double counted_common_bound(const MemoryProfile& p);

/// Unique-side pair: the i-resolved sum over x_u_ti, and its relaxation
/// through the zero-extended kernel on x_u. The first dominates the
/// second for every valid profile.
struct UniqueBounds {
  Rational exact_i;
  Rational relaxed;
};
UniqueBounds counted_unique_bound_exact(const MemoryProfile& p);
std::pair<double, double> counted_unique_bound(const MemoryProfile& p);

/// Exhaustive cross-check of the counting argument on one placement:
/// averages r_lb over (demand, permutation) pairs for both restricted
/// demand classes and matches the profile sums exactly; also matches
/// every subfile's appearance count against the closed forms.
struct CountingReport {
  bool pass = false;
  std::int64_t common_pairs = 0;
  std::int64_t unique_pairs = 0;
  Rational common_avg;
  Rational unique_avg;
  Rational common_expected;
  Rational unique_expected;
  std::int64_t appearance_checks = 0;
  std::string first_mismatch;  // empty on pass
};

CountingReport verify_genie_counting(const PlacementSpec& placement, double cap = 1e7);

struct ConverseResult {
  double beta = 0.0;
  double value = 0.0;
  bool convex = false;
};

/// Lower bound on the optimal worst-case load under uncoded placement:
/// min over feasible beta of (f_common(t_c) + f_unique(t_u))/2, by the
/// same grid-plus-golden-section scheme the achievable side uses. Also
/// reports a midpoint convexity scan of the objective.
ConverseResult converse_bound(const SystemConfig& cfg);

}  // namespace hetcache
