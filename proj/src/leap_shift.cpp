#include "mallows/leap_shift.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

#include "mallows/errors.hpp"

namespace mallows {

namespace {

int window_size(int rank, int n, int leap) {
  return std::min(n, rank + leap) - std::max(1, rank - leap);
}

}  // namespace

Ranking leap_shift_apply(const Ranking& rho, int item, int new_rank) {
  std::vector<int> r(rho.begin(), rho.end());
  const int old_rank = r[item];
  for (int& v : r) {
    if (new_rank < old_rank && v >= new_rank && v < old_rank) ++v;
    else if (new_rank > old_rank && v > old_rank && v <= new_rank) --v;
  }
  r[item] = new_rank;
  return unchecked_ranking(std::move(r));
}

double leap_shift_log_prob(const Ranking& from, const Ranking& to, int leap) {
  const int n = from.size();
  if (to.size() != n) throw DimensionMismatch(from.ranks().size(), to.ranks().size());
  int lo = n + 1, hi = 0, changed = 0;
  for (int i = 0; i < n; ++i) {
    if (from[i] != to[i]) {
      lo = std::min(lo, from[i]);
      hi = std::max(hi, from[i]);
      ++changed;
    }
  }
  const double none = -std::numeric_limits<double>::infinity();
  // The moved block must be a contiguous run of ranks no longer than leap.
  if (changed == 0 || changed != hi - lo + 1 || hi - lo > leap) return none;

  double p = 0.0;
  for (int i = 0; i < n; ++i) {
    // Item at the top of the block leaps down to hi, the rest shift up ...
    if (from[i] == lo && to[i] == hi) {
      bool ok = true;
      for (int h = 0; h < n && ok; ++h)
        if (h != i && from[h] > lo && from[h] <= hi) ok = to[h] == from[h] - 1;
      if (ok) p += 1.0 / window_size(lo, n, leap);
    }
    // ... or the item at the bottom leaps up to lo and the rest shift down.
    if (from[i] == hi && to[i] == lo) {
      bool ok = true;
      for (int h = 0; h < n && ok; ++h)
        if (h != i && from[h] >= lo && from[h] < hi) ok = to[h] == from[h] + 1;
      if (ok) p += 1.0 / window_size(hi, n, leap);
    }
  }
  if (p <= 0.0) return none;
  return std::log(p / n);
}

LeapShiftMove leap_and_shift(const Ranking& rho, int leap, Rng& rng) {
  const int n = rho.size();
  if (n < 2) throw ValidationError("leap-and-shift needs at least two items");
  if (leap < 1 || leap > n - 1) {
    throw ValidationError("leap size must lie in [1, n-1], got " + std::to_string(leap));
  }
  const int item = uniform_int(rng, 0, n - 1);
  const int rank = rho[item];
  const int lo = std::max(1, rank - leap);
  const int hi = std::min(n, rank + leap);
  int new_rank = uniform_int(rng, lo, hi - 1);
  if (new_rank >= rank) ++new_rank;
  Ranking proposal = leap_shift_apply(rho, item, new_rank);
  const double fwd = leap_shift_log_prob(rho, proposal, leap);
  const double bwd = leap_shift_log_prob(proposal, rho, leap);
  return {std::move(proposal), fwd, bwd};
}

}  // namespace mallows
