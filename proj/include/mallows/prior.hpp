#pragma once

// Conjugate prior for the consensus ranking: the extended Mallows model
// pi(rho) proportional to exp(-eta0 ||rho0 - rho||^2), whose mode rho0 may be
// any point of the permutohedron.

#include <map>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "mallows/perm_core.hpp"

namespace mallows {

struct FixedPrecision {
  double eta0 = 0.0;
};

/// eta0 = theta * n0: the prior is worth n0 pseudo-observations.
struct LinkedPrecision {
  double n0 = 0.0;
};

class EmmsPrior {
 public:
  EmmsPrior(PermutohedronPoint rho0, FixedPrecision precision);
  EmmsPrior(PermutohedronPoint rho0, LinkedPrecision precision);

  /// Uniform prior over P_n (barycenter mode, zero precision).
  static EmmsPrior uniform(int n);

  const PermutohedronPoint& rho0() const noexcept { return rho0_; }
  int n() const noexcept { return rho0_.size(); }
  bool linked() const noexcept { return std::holds_alternative<LinkedPrecision>(precision_); }
  /// n0 for a linked prior, 0 otherwise.
  double n0() const noexcept;
  /// The concentration at a given theta. Throws ValidationError when the
  /// prior is theta-linked and no theta is given.
  double eta0(std::optional<double> theta = std::nullopt) const;

 private:
  PermutohedronPoint rho0_;
  std::variant<FixedPrecision, LinkedPrecision> precision_;
};

/// -eta0 ||rho0 - rho||^2, minus log Z*(eta0, rho0) when `normalized`.
double emms_log_density(const Ranking& rho, const EmmsPrior& prior,
                        std::optional<double> theta = std::nullopt, bool normalized = false);

struct PosteriorParams {
  PermutohedronPoint rho_n;
  double eta_n = 0.0;
};

/// rho_N = (theta N Rbar + eta0 rho0) / (eta0 + theta N), eta_N = eta0 + theta N.
PosteriorParams posterior_update(const EmmsPrior& prior, const RankingSample& s, double theta);

/// Y(rho_N); propagates TiesPresent.
Ranking map_estimate(const PosteriorParams& pp);

enum class Comparison { first_higher, second_higher, equal };
std::string to_string(Comparison c);

/// Decides which of two rankings has the larger posterior mass under a
/// likelihood with precision theta and prior precision eta0 = gamma * theta,
/// by the sign of [D(rho2) - D(rho1)] + gamma [D*(rho2) - D*(rho1)] with
/// D(rho) = sum_j ||R_j - rho||^2 and D*(rho) = ||rho0 - rho||^2.
/// Evaluated in exact rational arithmetic.
Comparison theorem1_compare(const Ranking& rho1, const Ranking& rho2, const RankingSample& s,
                            const PermutohedronPoint& rho0, double gamma);

/// Total data distance D(rho).
std::int64_t total_distance(const RankingSample& s, const Ranking& rho);

/// Prior mode from a partial top-k ranking: `top_ranks` maps 0-based item
/// indices to ranks 1..k; every other item gets (n + k + 1) / 2.
PermutohedronPoint elicit_topk(int n, const std::map<int, int>& top_ranks);

/// Convex combination of expert modes; uniform weights by default.
PermutohedronPoint elicit_multi_expert(const std::vector<PermutohedronPoint>& modes,
                                       const std::vector<double>& weights = {});

enum class Orientation { higher_is_better, lower_is_better };

/// Items as rows, covariates as columns.
struct CovariateTable {
  std::string item_header = "item";
  std::vector<std::string> items;
  std::vector<std::string> covariates;
  std::vector<std::vector<double>> values;  ///< values[item][covariate]
};

/// Parses the CSV layout: header "<label>,<cov1>,...", then "<item>,<v1>,...".
CovariateTable parse_covariates_csv(const std::string& text);

struct CovariateElicitation {
  std::vector<std::string> covariates;
  /// Midrank vector per covariate, rank 1 = most preferred.
  std::vector<std::vector<double>> rank_vectors;
  /// Average of the rank vectors.
  PermutohedronPoint rho0;
  std::vector<std::string> warnings;
};

/// Missing orientations default to higher_is_better.
CovariateElicitation elicit_from_covariates(const CovariateTable& table,
                                            const std::vector<Orientation>& orientations);

}  // namespace mallows
