#pragma once

#include <string>
#include <vector>

#include "hetcache/model.hpp"
#include "hetcache/rational.hpp"

namespace hetcache {

struct SweepRow {
  double M = 0.0;
  double beta_ach = 0.0;
  double achievable = 0.0;
  double beta_conv = 0.0;
  double converse = 0.0;
  double gap = 1.0;
};

/// `points` uniform samples of [0, Nc+Nu] plus every memory size that
/// admits an integer split (where simulation can cross-check the
/// formula), sorted and deduplicated.
std::vector<double> default_m_grid(const SystemConfig& cfg, int points = 101);

/// Upper and lower bounds per memory point, with gap = achievable /
/// converse. At the full-memory endpoint both loads are 0 and the gap is
/// reported as 1.
std::vector<SweepRow> gap_sweep(const SystemConfig& cfg, const std::vector<double>& grid);

/// Ratio of the worst-case load at the converse-optimal split to the
/// converse value itself. Dropping the subtracted binomial terms bounds
/// this by 2 analytically; 0/0 at full memory is reported as 1.
double fixed_beta_gap(const SystemConfig& cfg, double M);

struct WorstCaseResult {
  Demand demand;
  Rational load;
  std::vector<int> alpha;
};

/// Delivers every demand in the class and returns the (lexicographically
/// first) maximizer. Requires an integer split at this beta.
WorstCaseResult worst_case_bruteforce(const SystemConfig& cfg, double beta,
                                      double cap = 1e7);

/// CSV with header M,beta_ach,achievable,beta_conv,converse,gap and 12
/// significant digits per number.
std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace hetcache
