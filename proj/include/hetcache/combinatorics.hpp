#pragma once

#include <cstdint>

namespace hetcache {

/// Binomial coefficient extended to real arguments through the Gamma
/// function. Integer inputs take an exact integer path (so callers that
/// size subfiles get exact values); real inputs evaluate
/// Gamma(n+1)/(Gamma(k+1)Gamma(n-k+1)).
///
/// Zero cases: n < 0, k < 0, or k > n+1. On the strip n < k <= n+1 the
/// Gamma form decays continuously from C(n,n)=1 to 0, which keeps the
/// load expressions continuous in the cache split; for integer k the
/// usual n < k convention is unchanged.
///
/// Throws std::overflow_error when the value exceeds double range.
double gen_binom(double n, double k);

/// log(gen_binom(n, k)); -inf where the value is zero. Stable for large n.
double log_gen_binom(double n, double k);

/// (K - t) / (t + 1) on t in [0, K]; equals C(K,t+1)/C(K,t).
/// Throws std::domain_error outside the range.
double f_common(double t, int K);

/// G * (K/G - t) / (t + 1) on t in [0, K/G]; equals G*C(K/G,t+1)/C(K/G,t).
/// Requires G | K. Throws std::domain_error outside the range.
double f_unique(double t, int K, int G);

/// Number of permutations of [K] in which a designated user precedes all
/// t members of a designated disjoint set: (K-1-t)! * t! * C(K, t+1).
/// Throws std::domain_error unless 0 <= t <= K-1, std::overflow_error if
/// the count exceeds 64 bits.
std::uint64_t perm_count(int K, int t);

/// Exact integer binomial; 0 when k < 0 or k > n. Throws
/// std::overflow_error beyond 64 bits.
std::uint64_t binom_u64(int n, int k);

}  // namespace hetcache
