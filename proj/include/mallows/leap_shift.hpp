#pragma once

// Leap-and-Shift proposal on P_n: pick an item u uniformly, move its rank to
// a different value within distance L, and shift the items in between by one
// towards the vacated rank.

#include "mallows/perm_core.hpp"
#include "mallows/rng.hpp"

namespace mallows {

struct LeapShiftMove {
  Ranking proposal;
  double log_forward;   ///< log q(proposal | current)
  double log_backward;  ///< log q(current | proposal)
};

/// Applies the move of item `item` (0-based) to rank `new_rank`.
Ranking leap_shift_apply(const Ranking& rho, int item, int new_rank);

/// log q(to | from) under leap size L; -inf when `to` is unreachable.
double leap_shift_log_prob(const Ranking& from, const Ranking& to, int leap);

/// Draws one proposal. Requires 1 <= leap <= n - 1 and n >= 2.
LeapShiftMove leap_and_shift(const Ranking& rho, int leap, Rng& rng);

}  // namespace mallows
