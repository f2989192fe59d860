#pragma once

// The Mallows model with Spearman's distance: p(r | rho, theta) is
// proportional to exp(-theta ||r - rho||^2) on P_n.

#include <cstddef>

#include "mallows/partition.hpp"
#include "mallows/perm_core.hpp"
#include "mallows/rng.hpp"

namespace mallows {

struct MmsParams {
  Ranking rho;
  double theta = 0.0;

  MmsParams(Ranking consensus, double precision);
};

double log_pmf(const Ranking& r, const MmsParams& params, const DistanceFrequencyTable& table);

/// N iid draws by inverse CDF over the enumerated support sorted by weight.
/// Throws LimitExceeded above kEnumerationLimit.
RankingSample sample_exact(const MmsParams& params, std::size_t count, RngSeed seed);

struct ChainSettings {
  std::size_t burn_in = 1000;
  std::size_t thin = 1;
  int leap = 1;
};

/// Metropolis chain with Leap-and-Shift proposals started at params.rho.
RankingSample sample_mcmc(const MmsParams& params, std::size_t count,
                          const ChainSettings& settings, RngSeed seed);

/// Y(Rbar). Throws NonUniqueMle when the sample mean has ties.
Ranking mle_rho(const RankingSample& s);

struct ThetaEstimate {
  double theta = 0.0;
  /// Mean observed distance is at or above the uniform mean: the likelihood
  /// in theta is maximized at the boundary 0.
  bool flat = false;
};

/// Solves E[d | theta] = mean_j ||R_j - rho||^2 by bisection to 1e-8.
/// Throws NumericalError when every observation equals rho.
ThetaEstimate mle_theta(const RankingSample& s, const Ranking& rho,
                        const DistanceFrequencyTable& table);

/// Same root-finding, from the mean observed distance directly.
ThetaEstimate solve_theta_moment(double mean_distance, const DistanceFrequencyTable& table);

/// sum_j log p(R_j | rho, theta)
double log_likelihood(const RankingSample& s, const MmsParams& params,
                      const DistanceFrequencyTable& table);

}  // namespace mallows
