#include "hetcache/combinatorics.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace hetcache {

namespace {

bool is_integral(double x) { return x == std::floor(x); }

// Exact product form; returns false if the running value leaves 128 bits.
bool binom_u128(std::int64_t n, std::int64_t k, unsigned __int128& out) {
  if (k > n - k) k = n - k;
  unsigned __int128 r = 1;
  for (std::int64_t i = 1; i <= k; ++i) {
    unsigned __int128 f = static_cast<unsigned __int128>(n - k + i);
    if (r > ~static_cast<unsigned __int128>(0) / f) return false;
    r = r * f / static_cast<unsigned __int128>(i);  // exact: prefix is C(n-k+i, i)
  }
  out = r;
  return true;
}

}  // namespace

double gen_binom(double n, double k) {
  if (std::isnan(n) || std::isnan(k)) throw std::domain_error("gen_binom: NaN argument");
  if (n < 0.0 || k < 0.0 || k > n + 1.0) return 0.0;
  if (is_integral(n) && is_integral(k)) {
    if (k > n) return 0.0;
    if (n < (1LL << 62)) {
      unsigned __int128 r;
      if (binom_u128(static_cast<std::int64_t>(n), static_cast<std::int64_t>(k), r))
        return static_cast<double>(r);
    }
  }
  double v = std::exp(log_gen_binom(n, k));
  if (!std::isfinite(v))
    throw std::overflow_error("gen_binom: value out of double range for n=" + std::to_string(n) +
                              ", k=" + std::to_string(k));
  return v;
}

double log_gen_binom(double n, double k) {
  if (std::isnan(n) || std::isnan(k)) throw std::domain_error("log_gen_binom: NaN argument");
  if (n < 0.0 || k < 0.0 || k > n + 1.0) return -std::numeric_limits<double>::infinity();
  // lgamma poles at nonpositive integers only arise at k == n+1, where the
  // coefficient is exactly zero.
  if (k == n + 1.0) return -std::numeric_limits<double>::infinity();
  return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0);
}

double f_common(double t, int K) {
  if (K <= 0) throw std::domain_error("f_common: K must be positive");
  if (!(t >= 0.0 && t <= static_cast<double>(K)))
    throw std::domain_error("f_common: t=" + std::to_string(t) + " outside [0, " + std::to_string(K) + "]");
  return (static_cast<double>(K) - t) / (t + 1.0);
}

double f_unique(double t, int K, int G) {
  if (K <= 0 || G <= 0 || K % G != 0) throw std::domain_error("f_unique: G must divide K");
  const double kg = static_cast<double>(K) / G;
  if (!(t >= 0.0 && t <= kg))
    throw std::domain_error("f_unique: t=" + std::to_string(t) + " outside [0, " + std::to_string(kg) + "]");
  return static_cast<double>(G) * (kg - t) / (t + 1.0);
}

std::uint64_t perm_count(int K, int t) {
  if (K <= 0 || t < 0 || t >= K)
    throw std::domain_error("perm_count: need 0 <= t <= K-1");
  unsigned __int128 r;
  if (!binom_u128(K, t + 1, r)) throw std::overflow_error("perm_count: overflow");
  const auto lim = ~static_cast<unsigned __int128>(0);
  for (int i = 2; i <= K - 1 - t; ++i) {
    if (r > lim / static_cast<unsigned>(i)) throw std::overflow_error("perm_count: overflow");
    r *= static_cast<unsigned>(i);
  }
  for (int i = 2; i <= t; ++i) {
    if (r > lim / static_cast<unsigned>(i)) throw std::overflow_error("perm_count: overflow");
    r *= static_cast<unsigned>(i);
  }
  if (r > std::numeric_limits<std::uint64_t>::max()) throw std::overflow_error("perm_count: overflow");
  return static_cast<std::uint64_t>(r);
}

std::uint64_t binom_u64(int n, int k) {
  if (k < 0 || k > n) return 0;
  unsigned __int128 r;
  if (!binom_u128(n, k, r) || r > std::numeric_limits<std::uint64_t>::max())
    throw std::overflow_error("binom_u64: overflow for n=" + std::to_string(n));
  return static_cast<std::uint64_t>(r);
}

}  // namespace hetcache
