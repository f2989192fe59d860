#include "mallows/prior.hpp"

#include <algorithm>
#include <cmath>
#include <set>
#include <sstream>

#include <boost/multiprecision/cpp_int.hpp>

#include "mallows/errors.hpp"
#include "mallows/io.hpp"
#include "mallows/partition.hpp"

namespace mallows {

namespace {

void require_nonnegative(double v, const char* what) {
  if (!(v >= 0.0) || !std::isfinite(v)) {
    throw ValidationError(std::string(what) + " must be a finite value >= 0");
  }
}

}  // namespace

EmmsPrior::EmmsPrior(PermutohedronPoint rho0, FixedPrecision precision)
    : rho0_(std::move(rho0)), precision_(precision) {
  require_nonnegative(precision.eta0, "eta0");
}

EmmsPrior::EmmsPrior(PermutohedronPoint rho0, LinkedPrecision precision)
    : rho0_(std::move(rho0)), precision_(precision) {
  require_nonnegative(precision.n0, "n0");
}

EmmsPrior EmmsPrior::uniform(int n) {
  return EmmsPrior(PermutohedronPoint::barycenter(n), FixedPrecision{0.0});
}

double EmmsPrior::n0() const noexcept {
  if (const auto* l = std::get_if<LinkedPrecision>(&precision_)) return l->n0;
  return 0.0;
}

double EmmsPrior::eta0(std::optional<double> theta) const {
  if (const auto* f = std::get_if<FixedPrecision>(&precision_)) return f->eta0;
  if (!theta) throw ValidationError("a theta-linked prior needs theta to evaluate eta0 = theta * n0");
  require_nonnegative(*theta, "theta");
  return *theta * std::get<LinkedPrecision>(precision_).n0;
}

double emms_log_density(const Ranking& rho, const EmmsPrior& prior, std::optional<double> theta,
                        bool normalized) {
  const double eta0 = prior.eta0(theta);
  double lp = -eta0 * spearman_distance(rho, prior.rho0());
  if (normalized) lp -= log_z_star(eta0, prior.rho0());
  return lp;
}

PosteriorParams posterior_update(const EmmsPrior& prior, const RankingSample& s, double theta) {
  require_nonnegative(theta, "theta");
  if (s.n() != prior.n()) throw DimensionMismatch(static_cast<std::size_t>(s.n()), static_cast<std::size_t>(prior.n()));
  const double eta0 = prior.eta0(theta);
  const double data_weight = theta * static_cast<double>(s.size());
  const double eta_n = eta0 + data_weight;
  if (s.empty() || data_weight == 0.0) return {prior.rho0(), eta_n};
  if (eta0 == 0.0) return {sample_mean(s), eta_n};

  const auto sums = s.column_sums();
  std::vector<double> rho_n(sums.size());
  for (std::size_t i = 0; i < sums.size(); ++i) {
    rho_n[i] = (theta * static_cast<double>(sums[i]) + eta0 * prior.rho0()[i]) / eta_n;
  }
  return {PermutohedronPoint(std::move(rho_n)), eta_n};
}

Ranking map_estimate(const PosteriorParams& pp) { return rank_vector(pp.rho_n); }

std::string to_string(Comparison c) {
  switch (c) {
    case Comparison::first_higher: return "first_higher";
    case Comparison::second_higher: return "second_higher";
    case Comparison::equal: return "equal";
  }
  return "?";
}

std::int64_t total_distance(const RankingSample& s, const Ranking& rho) {
  std::int64_t d = 0;
  for (const auto& r : s.rows()) d += spearman_distance(r, rho);
  return d;
}

Comparison theorem1_compare(const Ranking& rho1, const Ranking& rho2, const RankingSample& s,
                            const PermutohedronPoint& rho0, double gamma) {
  using boost::multiprecision::cpp_rational;
  require_nonnegative(gamma, "gamma");
  if (rho1.size() != rho2.size() || rho1.size() != rho0.size()) {
    throw DimensionMismatch(rho1.ranks().size(), rho2.ranks().size());
  }
  // Doubles are dyadic rationals, so these conversions are exact.
  cpp_rational prior_gap = 0;  // D*(rho2) - D*(rho1)
  for (int i = 0; i < rho0.size(); ++i) {
    const cpp_rational x(rho0[i]);
    prior_gap += (x - rho2[i]) * (x - rho2[i]) - (x - rho1[i]) * (x - rho1[i]);
  }
  const cpp_rational data_gap = total_distance(s, rho1) - total_distance(s, rho2);
  const cpp_rational rhs = cpp_rational(gamma) * prior_gap;
  if (data_gap < rhs) return Comparison::first_higher;
  if (data_gap > rhs) return Comparison::second_higher;
  return Comparison::equal;
}

PermutohedronPoint elicit_topk(int n, const std::map<int, int>& top_ranks) {
  const int k = static_cast<int>(top_ranks.size());
  if (k > n) throw ValidationError("more ranked items than n");
  std::set<int> seen;
  for (const auto& [item, rank] : top_ranks) {
    if (item < 0 || item >= n) throw ValidationError("item index " + std::to_string(item + 1) + " outside 1..n");
    if (rank < 1 || rank > k) {
      throw ValidationError("top-k rank " + std::to_string(rank) + " outside 1.." + std::to_string(k));
    }
    if (!seen.insert(rank).second) throw ValidationError("duplicate top-k rank " + std::to_string(rank));
  }
  std::vector<double> rho0(static_cast<std::size_t>(n), (n + k + 1) / 2.0);
  for (const auto& [item, rank] : top_ranks) rho0[item] = rank;
  return PermutohedronPoint(std::move(rho0));
}

PermutohedronPoint elicit_multi_expert(const std::vector<PermutohedronPoint>& modes,
                                       const std::vector<double>& weights) {
  if (modes.empty()) throw ValidationError("no expert modes given");
  const auto n = static_cast<std::size_t>(modes.front().size());
  for (const auto& m : modes) {
    if (static_cast<std::size_t>(m.size()) != n) throw DimensionMismatch(static_cast<std::size_t>(m.size()), n);
  }
  std::vector<double> out(n, 0.0);
  if (weights.empty()) {
    // Sum first and divide once, so averages of half-integers stay exact.
    for (const auto& m : modes)
      for (std::size_t i = 0; i < n; ++i) out[i] += m[i];
    for (double& v : out) v /= static_cast<double>(modes.size());
    return PermutohedronPoint(std::move(out));
  }
  if (weights.size() != modes.size()) throw DimensionMismatch(weights.size(), modes.size());
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0)) throw ValidationError("expert weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ValidationError("expert weights must sum to 1");
  for (std::size_t e = 0; e < modes.size(); ++e)
    for (std::size_t i = 0; i < n; ++i) out[i] += weights[e] * modes[e][i];
  return PermutohedronPoint(std::move(out));
}

CovariateTable parse_covariates_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  CovariateTable t;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    auto fields = split_csv_line(line);
    const std::string where = "line " + std::to_string(line_no) + ": ";
    if (!have_header) {
      if (fields.size() < 2) throw ValidationError(where + "header needs an item column and a covariate");
      t.item_header = fields.front();
      t.covariates.assign(fields.begin() + 1, fields.end());
      have_header = true;
      continue;
    }
    if (fields.size() != t.covariates.size() + 1) {
      throw ValidationError(where + "expected " + std::to_string(t.covariates.size() + 1) +
                            " fields, found " + std::to_string(fields.size()));
    }
    std::vector<double> row;
    for (std::size_t c = 1; c < fields.size(); ++c) {
      const auto& f = fields[c];
      std::size_t used = 0;
      double v = 0.0;
      try {
        v = std::stod(f, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (f.empty() || used != f.size() || !std::isfinite(v)) {
        throw ValidationError(where + "missing or non-numeric value '" + f + "' for covariate " +
                              t.covariates[c - 1]);
      }
      row.push_back(v);
    }
    t.items.push_back(fields.front());
    t.values.push_back(std::move(row));
  }
  if (!have_header) throw ValidationError("covariate CSV is empty");
  if (t.items.empty()) throw ValidationError("covariate CSV has no items");
  return t;
}

CovariateElicitation elicit_from_covariates(const CovariateTable& table,
                                            const std::vector<Orientation>& orientations) {
  const std::size_t items = table.items.size();
  if (items == 0) throw ValidationError("no items");
  if (orientations.size() > table.covariates.size()) {
    throw ValidationError("more orientations than covariates");
  }
  CovariateElicitation out{table.covariates, {}, PermutohedronPoint::barycenter(static_cast<int>(items)), {}};
  std::vector<PermutohedronPoint> modes;
  for (std::size_t c = 0; c < table.covariates.size(); ++c) {
    const Orientation o = c < orientations.size() ? orientations[c] : Orientation::higher_is_better;
    std::vector<double> column(items);
    for (std::size_t i = 0; i < items; ++i) {
      if (table.values[i].size() != table.covariates.size()) {
        throw ValidationError("item " + table.items[i] + " has a missing value");
      }
      column[i] = o == Orientation::higher_is_better ? -table.values[i][c] : table.values[i][c];
    }
    auto ranks = midrank_vector(column);
    if (std::all_of(column.begin(), column.end(), [&](double v) { return std::abs(v - column[0]) <= kTieTolerance; })) {
      out.warnings.push_back("covariate '" + table.covariates[c] +
                             "' is constant; every item receives the midrank " +
                             std::to_string((items + 1) / 2.0));
    }
    modes.emplace_back(ranks);
    out.rank_vectors.push_back(std::move(ranks));
  }
  out.rho0 = elicit_multi_expert(modes);
  return out;
}

}  // namespace mallows
