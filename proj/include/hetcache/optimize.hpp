#pragma once

#include <functional>

namespace hetcache {

struct MinimizeResult {
  double x = 0.0;
  double value = 0.0;
  int evals = 0;
};

/// One-dimensional minimizer for piecewise-smooth objectives: evaluates an
/// inclusive uniform grid, then golden-section refines the bracketing
/// interval around the best grid point until it is narrower than xtol.
/// Returns the best probe actually evaluated. A degenerate interval
/// (lo == hi) is a single evaluation.
MinimizeResult minimize_grid_golden(const std::function<double(double)>& f,
                                    double lo, double hi,
                                    int grid_points = 1001,
                                    double xtol = 1e-9);

/// Midpoint convexity scan: checks f(x-h) + f(x+h) >= 2 f(x) - tol at
/// `samples` interior points. Returns true when no violation is found.
bool convexity_scan(const std::function<double(double)>& f, double lo,
                    double hi, int samples = 199, double tol = 1e-9);

}  // namespace hetcache
