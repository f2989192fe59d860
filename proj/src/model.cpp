#include "mallows/model.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "mallows/errors.hpp"
#include "mallows/leap_shift.hpp"

namespace mallows {

MmsParams::MmsParams(Ranking consensus, double precision)
    : rho(std::move(consensus)), theta(precision) {
  if (!(theta >= 0.0) || !std::isfinite(theta)) {
    throw ValidationError("theta must be a finite value >= 0");
  }
}

double log_pmf(const Ranking& r, const MmsParams& params, const DistanceFrequencyTable& table) {
  if (r.size() != table.n()) throw DimensionMismatch(r.ranks().size(), static_cast<std::size_t>(table.n()));
  return -params.theta * static_cast<double>(spearman_distance(r, params.rho)) -
         log_z(params.theta, table);
}

double log_likelihood(const RankingSample& s, const MmsParams& params,
                      const DistanceFrequencyTable& table) {
  double total = 0.0;
  for (const auto& r : s.rows()) total -= params.theta * static_cast<double>(spearman_distance(r, params.rho));
  return total - static_cast<double>(s.size()) * log_z(params.theta, table);
}

RankingSample sample_exact(const MmsParams& params, std::size_t count, RngSeed seed) {
  const int n = params.rho.size();
  if (n > kEnumerationLimit) {
    throw LimitExceeded("exact sampling enumerates P_n and supports n <= " +
                        std::to_string(kEnumerationLimit) + "; use sample_mcmc");
  }
  // Support in lexicographic order, then stably sorted by decreasing weight.
  std::vector<int> flat;
  std::vector<double> log_w;
  for_each_permutation(n, [&](std::span<const int> p) {
    std::int64_t d = 0;
    for (int i = 0; i < n; ++i) {
      const std::int64_t diff = p[i] - params.rho[i];
      d += diff * diff;
    }
    flat.insert(flat.end(), p.begin(), p.end());
    log_w.push_back(-params.theta * static_cast<double>(d));
  });
  std::vector<std::size_t> order(log_w.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return log_w[a] > log_w[b]; });
  const double top = log_w[order.front()];
  std::vector<double> cdf(order.size());
  double acc = 0.0;
  for (std::size_t k = 0; k < order.size(); ++k) {
    acc += std::exp(log_w[order[k]] - top);
    cdf[k] = acc;
  }

  Rng rng = make_rng(seed);
  RankingSample out(n);
  for (std::size_t j = 0; j < count; ++j) {
    const double u = uniform01(rng) * acc;
    auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
    const std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - cdf.begin()), cdf.size() - 1);
    const auto* p = flat.data() + order[k] * static_cast<std::size_t>(n);
    out.push_back(unchecked_ranking(std::vector<int>(p, p + n)));
  }
  return out;
}

RankingSample sample_mcmc(const MmsParams& params, std::size_t count,
                          const ChainSettings& settings, RngSeed seed) {
  const int n = params.rho.size();
  if (settings.thin < 1) throw ValidationError("thin must be >= 1");
  RankingSample out(n);
  if (n == 1) {
    for (std::size_t j = 0; j < count; ++j) out.push_back(params.rho);
    return out;
  }
  Rng rng = make_rng(seed);
  Ranking current = params.rho;
  std::int64_t current_d = 0;
  const std::size_t total = settings.burn_in + count * settings.thin;
  for (std::size_t it = 1; it <= total; ++it) {
    auto move = leap_and_shift(current, settings.leap, rng);
    const std::int64_t d = spearman_distance(move.proposal, params.rho);
    const double log_a = -params.theta * static_cast<double>(d - current_d) +
                         move.log_backward - move.log_forward;
    if (log_a >= 0.0 || std::log(uniform01(rng)) < log_a) {
      current = std::move(move.proposal);
      current_d = d;
    }
    if (it > settings.burn_in && (it - settings.burn_in) % settings.thin == 0) {
      out.push_back(current);
    }
  }
  return out;
}

Ranking mle_rho(const RankingSample& s) {
  const auto mean = sample_mean(s);
  auto groups = tied_groups(mean.coords());
  if (!groups.empty()) throw NonUniqueMle(std::move(groups));
  return rank_vector(mean);
}

ThetaEstimate solve_theta_moment(double mean_distance, const DistanceFrequencyTable& table) {
  if (mean_distance <= 0.0) {
    throw NumericalError("every observation equals the consensus; the MLE of theta diverges");
  }
  const double n = table.n();
  const double uniform_mean = n * (n * n - 1.0) / 6.0;
  if (mean_distance >= uniform_mean) return {0.0, true};

  double lo = 0.0, hi = 1.0;
  while (expected_distance(hi, table) >= mean_distance) {
    hi *= 2.0;
    if (hi > 1e6) throw NumericalError("no bracket for theta below 1e6");
  }
  while (hi - lo >= 1e-8) {
    const double mid = 0.5 * (lo + hi);
    if (expected_distance(mid, table) > mean_distance) lo = mid;
    else hi = mid;
  }
  return {0.5 * (lo + hi), false};
}

ThetaEstimate mle_theta(const RankingSample& s, const Ranking& rho,
                        const DistanceFrequencyTable& table) {
  if (s.empty()) throw ValidationError("mle_theta needs at least one observation");
  if (rho.size() != table.n()) throw DimensionMismatch(rho.ranks().size(), static_cast<std::size_t>(table.n()));
  std::int64_t total = 0;
  for (const auto& r : s.rows()) total += spearman_distance(r, rho);
  return solve_theta_moment(static_cast<double>(total) / static_cast<double>(s.size()), table);
}

}  // namespace mallows
