#include "hetcache/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <vector>

namespace hetcache {

MinimizeResult minimize_grid_golden(const std::function<double(double)>& f,
                                    double lo, double hi, int grid_points,
                                    double xtol) {
  if (!(lo <= hi)) throw std::invalid_argument("minimize: lo > hi");
  if (grid_points < 2) grid_points = 2;

  MinimizeResult best{lo, f(lo), 1};
  auto probe = [&](double x) {
    double v = f(x);
    ++best.evals;
    if (v < best.value) {
      best.value = v;
      best.x = x;
    }
    return v;
  };

  if (hi == lo) return best;

  std::vector<double> fx(grid_points);
  fx[0] = best.value;
  int ibest = 0;
  for (int i = 1; i < grid_points; ++i) {
    double x = lo + (hi - lo) * double(i) / double(grid_points - 1);
    if (i == grid_points - 1) x = hi;
    fx[i] = probe(x);
    if (fx[i] < fx[ibest]) ibest = i;
  }

  auto at = [&](int i) { return lo + (hi - lo) * double(i) / double(grid_points - 1); };
  double a = at(std::max(0, ibest - 1));
  double b = ibest == grid_points - 1 ? hi : at(ibest + 1);

  const double phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double x1 = b - phi * (b - a);
  double x2 = a + phi * (b - a);
  double f1 = probe(x1);
  double f2 = probe(x2);
  while (b - a > xtol) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - phi * (b - a);
      f1 = probe(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + phi * (b - a);
      f2 = probe(x2);
    }
  }
  return best;
}

bool convexity_scan(const std::function<double(double)>& f, double lo,
                    double hi, int samples, double tol) {
  if (!(hi > lo)) return true;
  double h = (hi - lo) / double(samples + 1);
  for (int i = 1; i <= samples; ++i) {
    double x = lo + h * double(i);
    if (f(x - h) + f(x + h) < 2.0 * f(x) - tol) return false;
  }
  return true;
}

}  // namespace hetcache
