#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

namespace mallows {

/// log sum_i exp(x_i); -inf for an empty or all -inf input.
inline double log_sum_exp(std::span<const double> x) {
  double m = -std::numeric_limits<double>::infinity();
  for (double v : x) m = std::max(m, v);
  if (!std::isfinite(m)) return m;
  double s = 0.0;
  for (double v : x) s += std::exp(v - m);
  return m + std::log(s);
}

/// log(exp(a) + exp(b))
inline double log_add(double a, double b) {
  if (a < b) std::swap(a, b);
  if (!std::isfinite(b)) return a;
  return a + std::log1p(std::exp(b - a));
}

}  // namespace mallows
