#pragma once

// Posterior computation for (rho, theta): exact enumeration for small n and
// Metropolis-within-Gibbs simulation.
//
// Inference cases:
//   a  eta0 fixed, independent of theta (Z* is a constant)
//   b  eta0 = theta * n0 with Z*(theta n0, rho0) interpolated on a grid
//   c  eta0 = theta * n0 with theta prior proportional to Z*(theta n0, rho0),
//      so Z* cancels from the posterior

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mallows/leap_shift.hpp"
#include "mallows/partition.hpp"
#include "mallows/perm_core.hpp"
#include "mallows/prior.hpp"
#include "mallows/rng.hpp"

namespace mallows {

class ThetaPrior {
 public:
  enum class Kind { jeffreys, exponential, flat, zstar_proportional };

  static ThetaPrior jeffreys() { return ThetaPrior(Kind::jeffreys, 0.0); }
  static ThetaPrior exponential(double rate);
  /// Uniform on [0, upper].
  static ThetaPrior flat(double upper);
  /// pi(theta) proportional to Z*(theta n0, rho0).
  static ThetaPrior zstar_proportional() { return ThetaPrior(Kind::zstar_proportional, 0.0); }

  /// "jeffreys", "exp:<rate>", "flat:<upper>", "zstar".
  static ThetaPrior parse(const std::string& spec);

  Kind kind() const noexcept { return kind_; }
  double parameter() const noexcept { return param_; }
  std::string str() const;

  /// Upper end of the support (infinite except for flat).
  double support_upper() const noexcept;

  /// Unnormalized log density; -inf outside the support. `log_zstar` is
  /// consulted only by zstar_proportional and gives log Z*(theta n0, rho0).
  double log_density(double theta, const DistanceFrequencyTable& table,
                     double log_zstar = 0.0) const;

 private:
  ThetaPrior(Kind k, double p) : kind_(k), param_(p) {}
  Kind kind_;
  double param_;
};

enum class InferenceCase { a_independent, b_linked_exact, c_linked_large_n };
std::string to_string(InferenceCase c);
InferenceCase parse_case(const std::string& s);

/// Data summaries through which the posterior depends on the sample.
struct SufficientStats {
  int n = 0;
  std::size_t count = 0;                 ///< N
  std::vector<std::int64_t> column_sums; ///< N * Rbar
  PermutohedronPoint rbar;               ///< barycenter when N = 0
  double n0 = 0.0;
  std::vector<double> rtilde;            ///< N Rbar + n0 rho0
  double g_tilde = 0.0;                  ///< (2N + n0) c_n + n0 ||rho0||^2
  PermutohedronPoint rho0;

  static SufficientStats from(const RankingSample& s, const EmmsPrior& prior);

  /// Vector w with log pi(rho | theta, data) = 2 rho . w + const.
  std::vector<double> rho_weights(double theta, double eta0) const;
};

/// Posterior over P_n for a fixed theta, normalized over all n! rankings.
/// Keys are in lexicographic order. Throws LimitExceeded for n > 8.
std::map<Ranking, double> exact_posterior_fixed_theta(const RankingSample& s, double theta,
                                                       const EmmsPrior& prior);

struct JointPosterior {
  std::map<Ranking, double> rho;
  double theta_mean = 0.0;
  std::vector<double> theta_grid;
  std::vector<double> theta_density;  ///< normalized marginal density on the grid
};

/// 400 geometric points on [1e-4, 2] plus theta = 0.
std::vector<double> default_theta_grid();

/// Joint posterior marginalized over theta by trapezoidal quadrature on a
/// grid. The grid is widened automatically (up to a few times) when the
/// unnormalized density at the upper end exceeds 1e-12 of its peak, and a
/// ValidationError is raised when that still fails. Requires n <= 6. In the
/// linked cases theta_prior is used as given (zstar_proportional reproduces
/// case c).
JointPosterior exact_posterior_joint(const RankingSample& s, const EmmsPrior& prior,
                                     const ThetaPrior& theta_prior,
                                     std::vector<double> theta_grid = default_theta_grid());

/// One Metropolis update of rho with a Leap-and-Shift proposal targeting
/// pi(rho) proportional to exp(2 rho . weights). Returns true on acceptance.
bool mh_step_rho(Ranking& current, std::span<const double> weights, int leap, Rng& rng);

/// The same update for the full conditional of rho given theta, with prior
/// concentration eta0: the weights are theta N Rbar + eta0 rho0.
Ranking mh_step_rho(const Ranking& current, double theta, const SufficientStats& stats,
                    double eta0, int leap, Rng& rng);

/// Context for theta updates.
struct ThetaStepContext {
  const SufficientStats* stats = nullptr;
  const ThetaPrior* prior = nullptr;
  InferenceCase inference_case = InferenceCase::a_independent;
  const DistanceFrequencyTable* table = nullptr;
  /// Required in case b. Proposals beyond its range are evaluated exactly
  /// from `spectrum`, the distance spectrum the grid was built from.
  const ZStarGrid* zstar = nullptr;
  const DistanceSpectrum* spectrum = nullptr;
  double eta0_fixed = 0.0;  ///< case a
};

/// Log full conditional of theta given rho, up to a constant.
double log_theta_conditional(double theta, const Ranking& rho, const ThetaStepContext& ctx);

/// Log-normal random walk theta' = theta exp(sd z). Returns true on acceptance.
bool mh_step_theta(double& theta, const Ranking& rho, const ThetaStepContext& ctx,
                   double proposal_sd, Rng& rng);

struct McmcConfig {
  std::size_t iterations = 55000;  ///< total, including burn-in
  std::size_t burn_in = 5000;
  std::size_t thin = 1;
  int leap = 1;
  double theta_proposal_sd = 0.5;
  bool adapt_during_burnin = true;
  RngSeed seed{};
  InferenceCase inference_case = InferenceCase::a_independent;
  /// Skip theta updates and hold theta fixed at this value.
  std::optional<double> fixed_theta;
  /// The Z* grid covers eta in [0, theta_max * n0].
  double theta_max = 1.0;
  int zstar_nodes = kDefaultZStarNodes;
};

struct McmcTrace {
  std::vector<std::size_t> iteration;
  std::vector<Ranking> rho_states;
  std::vector<double> theta_states;
  double accept_rho = 0.0;
  double accept_theta = 0.0;
  double final_theta_sd = 0.0;
  RngSeed seed{};

  std::size_t size() const noexcept { return rho_states.size(); }
};

/// Validates config against the prior: case a needs a fixed-precision prior,
/// b and c need a theta-linked one; b needs n <= kEnumerationLimit.
void validate_config(const McmcConfig& config, const EmmsPrior& prior, const ThetaPrior& theta_prior);

McmcTrace run_mcmc(const RankingSample& s, const EmmsPrior& prior, const ThetaPrior& theta_prior,
                   const McmcConfig& config, const DistanceFrequencyTable& table);

/// `chains` independent runs with seeds seed, seed+1, ...; run concurrently.
std::vector<McmcTrace> run_chains(const RankingSample& s, const EmmsPrior& prior,
                                  const ThetaPrior& theta_prior, const McmcConfig& config,
                                  const DistanceFrequencyTable& table, int chains);

McmcTrace merge_traces(const std::vector<McmcTrace>& traces);

struct PosteriorSummary {
  std::map<Ranking, double> epp;
  Ranking map_ranking;
  bool map_tied = false;  ///< several rankings share the top EPP
  double theta_mean = 0.0;
  std::pair<double, double> theta_ci{0.0, 0.0};
  std::size_t states = 0;
};

/// Empirical EPPs, MAP (lexicographically smallest on ties) and central 95%
/// theta interval. Throws ValidationError on an empty trace.
PosteriorSummary summarize(const McmcTrace& trace);

/// Largest |EPP difference| over rankings between any two chains.
double cross_chain_discrepancy(const std::vector<McmcTrace>& traces);

/// Half the L1 distance between two distributions over rankings.
double total_variation(const std::map<Ranking, double>& p, const std::map<Ranking, double>& q);

void write_trace_csv(std::ostream& out, const McmcTrace& trace);

}  // namespace mallows
