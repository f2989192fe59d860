#include "mallows/inference.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <numeric>
#include <ostream>
#include <sstream>

#include "mallows/errors.hpp"
#include "mallows/model.hpp"
#include "mallows/numeric.hpp"

namespace mallows {

namespace {

constexpr double kNegInf = -std::numeric_limits<double>::infinity();

double parse_positive(const std::string& s, const std::string& what) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != s.size() || !(v > 0.0) || !std::isfinite(v)) {
    throw ValidationError(what + " must be a positive number, got '" + s + "'");
  }
  return v;
}

double quantile(std::vector<double> v, double q) {
  std::sort(v.begin(), v.end());
  const double pos = q * static_cast<double>(v.size() - 1);
  const auto lo = static_cast<std::size_t>(std::floor(pos));
  const auto hi = std::min(lo + 1, v.size() - 1);
  const double t = pos - static_cast<double>(lo);
  return (1.0 - t) * v[lo] + t * v[hi];
}

double eta0_at(const EmmsPrior& prior, double theta) {
  return prior.linked() ? theta * prior.n0() : prior.eta0();
}

}  // namespace

ThetaPrior ThetaPrior::exponential(double rate) {
  if (!(rate > 0.0) || !std::isfinite(rate)) throw ValidationError("exponential rate must be positive");
  return ThetaPrior(Kind::exponential, rate);
}

ThetaPrior ThetaPrior::flat(double upper) {
  if (!(upper > 0.0) || !std::isfinite(upper)) throw ValidationError("flat prior upper bound must be positive");
  return ThetaPrior(Kind::flat, upper);
}

ThetaPrior ThetaPrior::parse(const std::string& spec) {
  if (spec == "jeffreys") return jeffreys();
  if (spec == "zstar") return zstar_proportional();
  if (spec.rfind("exp:", 0) == 0) return exponential(parse_positive(spec.substr(4), "exponential rate"));
  if (spec.rfind("flat:", 0) == 0) return flat(parse_positive(spec.substr(5), "flat upper bound"));
  throw ValidationError("unknown theta prior '" + spec + "' (expected jeffreys, exp:<rate>, flat:<upper>, zstar)");
}

std::string ThetaPrior::str() const {
  std::ostringstream os;
  switch (kind_) {
    case Kind::jeffreys: return "jeffreys";
    case Kind::zstar_proportional: return "zstar";
    case Kind::exponential: os << "exp:" << param_; break;
    case Kind::flat: os << "flat:" << param_; break;
  }
  return os.str();
}

double ThetaPrior::support_upper() const noexcept {
  return kind_ == Kind::flat ? param_ : std::numeric_limits<double>::infinity();
}

double ThetaPrior::log_density(double theta, const DistanceFrequencyTable& table,
                               double log_zstar) const {
  if (!(theta >= 0.0)) return kNegInf;
  switch (kind_) {
    case Kind::jeffreys: return jeffreys_log_density(theta, table);
    case Kind::exponential: return std::log(param_) - param_ * theta;
    case Kind::flat: return theta <= param_ ? -std::log(param_) : kNegInf;
    case Kind::zstar_proportional: return log_zstar;
  }
  return kNegInf;
}

std::string to_string(InferenceCase c) {
  switch (c) {
    case InferenceCase::a_independent: return "a";
    case InferenceCase::b_linked_exact: return "b";
    case InferenceCase::c_linked_large_n: return "c";
  }
  return "?";
}

InferenceCase parse_case(const std::string& s) {
  if (s == "a") return InferenceCase::a_independent;
  if (s == "b") return InferenceCase::b_linked_exact;
  if (s == "c") return InferenceCase::c_linked_large_n;
  throw ValidationError("unknown inference case '" + s + "' (expected a, b or c)");
}

SufficientStats SufficientStats::from(const RankingSample& s, const EmmsPrior& prior) {
  if (s.n() != prior.n()) throw DimensionMismatch(static_cast<std::size_t>(s.n()), static_cast<std::size_t>(prior.n()));
  SufficientStats st;
  st.n = s.n();
  st.count = s.size();
  st.column_sums = s.column_sums();
  st.rbar = s.empty() ? PermutohedronPoint::barycenter(s.n()) : sample_mean(s);
  st.n0 = prior.n0();
  st.rho0 = prior.rho0();
  st.rtilde.resize(static_cast<std::size_t>(st.n));
  double rho0_sq = 0.0;
  for (int i = 0; i < st.n; ++i) {
    st.rtilde[i] = static_cast<double>(st.column_sums[i]) + st.n0 * st.rho0[i];
    rho0_sq += st.rho0[i] * st.rho0[i];
  }
  st.g_tilde = (2.0 * static_cast<double>(st.count) + st.n0) * static_cast<double>(rank_square_norm(st.n)) +
               st.n0 * rho0_sq;
  return st;
}

std::vector<double> SufficientStats::rho_weights(double theta, double eta0) const {
  std::vector<double> w(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) w[i] = theta * static_cast<double>(column_sums[i]) + eta0 * rho0[i];
  return w;
}

std::map<Ranking, double> exact_posterior_fixed_theta(const RankingSample& s, double theta,
                                                       const EmmsPrior& prior) {
  if (s.n() > 8) throw LimitExceeded("exact fixed-theta posterior supports n <= 8");
  if (!(theta >= 0.0)) throw ValidationError("theta must be >= 0");
  const auto stats = SufficientStats::from(s, prior);
  const auto w = stats.rho_weights(theta, prior.eta0(theta));
  const auto support = all_rankings(s.n());
  std::vector<double> lp(support.size());
  for (std::size_t k = 0; k < support.size(); ++k) lp[k] = 2.0 * dot(support[k], w);
  const double norm = log_sum_exp(lp);
  std::map<Ranking, double> out;
  for (std::size_t k = 0; k < support.size(); ++k) out.emplace(support[k], std::exp(lp[k] - norm));
  return out;
}

std::vector<double> default_theta_grid() {
  constexpr int kPoints = 400;
  const double lo = 1e-4, hi = 2.0;
  std::vector<double> g{0.0};
  for (int k = 0; k < kPoints; ++k) g.push_back(lo * std::pow(hi / lo, static_cast<double>(k) / (kPoints - 1)));
  return g;
}

JointPosterior exact_posterior_joint(const RankingSample& s, const EmmsPrior& prior,
                                     const ThetaPrior& theta_prior, std::vector<double> grid) {
  const int n = s.n();
  if (n > 6) throw LimitExceeded("exact joint posterior supports n <= 6");
  if (grid.size() < 3) throw ValidationError("theta grid needs at least three points");
  for (std::size_t k = 1; k < grid.size(); ++k) {
    if (!(grid[k] > grid[k - 1]) || grid[0] < 0.0) throw ValidationError("theta grid must be increasing and nonnegative");
  }
  if (theta_prior.kind() == ThetaPrior::Kind::zstar_proportional && !prior.linked()) {
    throw ValidationError("a prior proportional to Z* needs a theta-linked rho prior");
  }
  const bool bounded = std::isfinite(theta_prior.support_upper());
  if (bounded) {
    const double upper = theta_prior.support_upper();
    while (!grid.empty() && grid.back() > upper) grid.pop_back();
    if (grid.empty() || grid.back() < upper) grid.push_back(upper);
  }

  const auto table = build_frequency_table(n);
  const auto support = all_rankings(n);
  const auto stats = SufficientStats::from(s, prior);
  const std::optional<DistanceSpectrum> spectrum =
      prior.linked() ? std::optional<DistanceSpectrum>(std::in_place, prior.rho0()) : std::nullopt;
  const double big_n = static_cast<double>(s.size());
  const double two_n_cn = 2.0 * big_n * static_cast<double>(rank_square_norm(n));
  std::vector<double> data_distance(support.size()), prior_distance(support.size());
  for (std::size_t r = 0; r < support.size(); ++r) {
    double dot_s = 0.0;
    for (int i = 0; i < n; ++i) dot_s += support[r][i] * static_cast<double>(stats.column_sums[i]);
    data_distance[r] = two_n_cn - 2.0 * dot_s;
    prior_distance[r] = spearman_distance(support[r], prior.rho0());
  }

  auto column = [&](double theta, std::vector<double>& out) {
    const double eta0 = eta0_at(prior, theta);
    const double lzs = spectrum ? spectrum->log_z_star(eta0) : 0.0;
    const double base = theta_prior.log_density(theta, table, lzs) - big_n * log_z(theta, table) - lzs;
    out.resize(support.size());
    for (std::size_t r = 0; r < support.size(); ++r) {
      out[r] = base - theta * data_distance[r] - eta0 * prior_distance[r];
    }
  };

  std::vector<std::vector<double>> logf;
  for (double t : grid) {
    logf.emplace_back();
    column(t, logf.back());
  }
  auto column_max = [](const std::vector<double>& c) { return *std::max_element(c.begin(), c.end()); };

  // Widen the grid until the upper end carries negligible mass.
  if (!bounded) {
    const double ratio = grid[grid.size() - 1] / grid[grid.size() - 2];
    for (int widen = 0;; ++widen) {
      double peak = kNegInf;
      for (const auto& c : logf) peak = std::max(peak, column_max(c));
      if (column_max(logf.back()) - peak < std::log(1e-12)) break;
      if (widen == 12) {
        throw ValidationError("theta grid up to " + std::to_string(grid.back()) +
                              " does not bracket the posterior mass: density at the upper end is " +
                              std::to_string(std::exp(column_max(logf.back()) - peak)) + " of the peak");
      }
      const double target = 2.0 * grid.back();
      while (grid.back() < target) {
        grid.push_back(grid.back() * ratio);
        logf.emplace_back();
        column(grid.back(), logf.back());
      }
    }
  }

  double peak = kNegInf;
  for (const auto& c : logf) peak = std::max(peak, column_max(c));
  const std::size_t m = grid.size();
  std::vector<double> rho_mass(support.size(), 0.0);
  std::vector<double> theta_density(m, 0.0);
  for (std::size_t k = 0; k < m; ++k) {
    for (std::size_t r = 0; r < support.size(); ++r) theta_density[k] += std::exp(logf[k][r] - peak);
  }
  double total = 0.0, first_moment = 0.0;
  for (std::size_t k = 0; k + 1 < m; ++k) {
    const double h = grid[k + 1] - grid[k];
    for (std::size_t r = 0; r < support.size(); ++r) {
      rho_mass[r] += 0.5 * h * (std::exp(logf[k][r] - peak) + std::exp(logf[k + 1][r] - peak));
    }
    total += 0.5 * h * (theta_density[k] + theta_density[k + 1]);
    first_moment += 0.5 * h * (grid[k] * theta_density[k] + grid[k + 1] * theta_density[k + 1]);
  }
  if (!(total > 0.0)) throw NumericalError("joint posterior has no mass on the theta grid");

  JointPosterior out;
  const double mass = std::accumulate(rho_mass.begin(), rho_mass.end(), 0.0);
  for (std::size_t r = 0; r < support.size(); ++r) out.rho.emplace(support[r], rho_mass[r] / mass);
  out.theta_mean = first_moment / total;
  for (double& v : theta_density) v /= total;
  out.theta_grid = std::move(grid);
  out.theta_density = std::move(theta_density);
  return out;
}

bool mh_step_rho(Ranking& current, std::span<const double> weights, int leap, Rng& rng) {
  if (current.size() < 2) return false;
  auto move = leap_and_shift(current, leap, rng);
  double delta = 0.0;
  for (int i = 0; i < current.size(); ++i) delta += (move.proposal[i] - current[i]) * weights[i];
  const double log_a = 2.0 * delta + move.log_backward - move.log_forward;
  if (log_a >= 0.0 || std::log(uniform01(rng)) < log_a) {
    current = std::move(move.proposal);
    return true;
  }
  return false;
}

Ranking mh_step_rho(const Ranking& current, double theta, const SufficientStats& stats,
                    double eta0, int leap, Rng& rng) {
  Ranking next = current;
  const auto w = stats.rho_weights(theta, eta0);
  mh_step_rho(next, w, leap, rng);
  return next;
}

namespace {

double zstar_from_context(double eta, const ThetaStepContext& ctx) {
  if (eta == 0.0) return std::lgamma(ctx.stats->n + 1.0);
  if (!ctx.zstar) throw ValidationError("case b needs a Z* grid");
  if (eta <= ctx.zstar->eta_max()) return ctx.zstar->interpolate(eta);
  // A coarser, wider grid would bias the whole chain, so rare excursions are
  // evaluated exactly instead.
  if (!ctx.spectrum) throw ValidationError("eta0 = " + std::to_string(eta) + " beyond the Z* grid");
  return ctx.spectrum->log_z_star(eta);
}

}  // namespace

double log_theta_conditional(double theta, const Ranking& rho, const ThetaStepContext& ctx) {
  if (!(theta > 0.0) || !std::isfinite(theta)) return kNegInf;
  const auto& st = *ctx.stats;
  const auto& table = *ctx.table;
  const bool jeffreys = ctx.prior->kind() == ThetaPrior::Kind::jeffreys;
  double lz, log_prior = 0.0;
  if (jeffreys) {
    const auto m = distance_moments(theta, table);
    lz = m.log_z;
    log_prior = m.variance > 0.0 ? 0.5 * std::log(m.variance) : kNegInf;
  } else {
    lz = log_z(theta, table);
  }
  const double big_n = static_cast<double>(st.count);
  double rho_dot_rtilde = 0.0;
  for (int i = 0; i < st.n; ++i) rho_dot_rtilde += rho[i] * st.rtilde[i];

  switch (ctx.inference_case) {
    case InferenceCase::a_independent: {
      if (!jeffreys) log_prior = ctx.prior->log_density(theta, table);
      double rho_dot_s = 0.0;
      for (int i = 0; i < st.n; ++i) rho_dot_s += rho[i] * static_cast<double>(st.column_sums[i]);
      const double data = 2.0 * big_n * static_cast<double>(rank_square_norm(st.n)) - 2.0 * rho_dot_s;
      return log_prior - big_n * lz - theta * data;
    }
    case InferenceCase::b_linked_exact: {
      const double lzs = zstar_from_context(theta * st.n0, ctx);
      if (!jeffreys) log_prior = ctx.prior->log_density(theta, table, lzs);
      return log_prior - big_n * lz - lzs - theta * (st.g_tilde - 2.0 * rho_dot_rtilde);
    }
    case InferenceCase::c_linked_large_n:
      if (theta > ctx.prior->support_upper()) return kNegInf;
      return -big_n * lz - theta * (st.g_tilde - 2.0 * rho_dot_rtilde);
  }
  return kNegInf;
}

bool mh_step_theta(double& theta, const Ranking& rho, const ThetaStepContext& ctx,
                   double proposal_sd, Rng& rng) {
  if (!(theta > 0.0)) throw ValidationError("current theta must be positive");
  const double proposal = theta * std::exp(proposal_sd * standard_normal(rng));
  const double log_new = log_theta_conditional(proposal, rho, ctx);
  if (!std::isfinite(log_new)) return false;
  const double log_old = log_theta_conditional(theta, rho, ctx);
  const double log_a = log_new - log_old + std::log(proposal) - std::log(theta);
  if (log_a >= 0.0 || std::log(uniform01(rng)) < log_a) {
    theta = proposal;
    return true;
  }
  return false;
}

void validate_config(const McmcConfig& config, const EmmsPrior& prior, const ThetaPrior& theta_prior) {
  if (config.iterations == 0 || config.thin == 0) throw ValidationError("iterations and thin must be positive");
  if (config.burn_in >= config.iterations) throw ValidationError("burn-in must be smaller than iterations");
  if (config.leap < 1 || (prior.n() >= 2 && config.leap > prior.n() - 1)) {
    throw ValidationError("leap size must lie in [1, n-1]");
  }
  if (!(config.theta_proposal_sd > 0.0)) throw ValidationError("theta proposal sd must be positive");
  if (config.fixed_theta && !(*config.fixed_theta >= 0.0)) throw ValidationError("fixed theta must be >= 0");
  const auto c = config.inference_case;
  if (c == InferenceCase::a_independent && prior.linked()) {
    throw ValidationError("case a needs eta0 independent of theta; a theta-linked prior needs case b or c");
  }
  if (c != InferenceCase::a_independent && !prior.linked()) {
    throw ValidationError("cases b and c need a theta-linked prior (eta0 = theta * n0)");
  }
  if (theta_prior.kind() == ThetaPrior::Kind::zstar_proportional && c == InferenceCase::a_independent) {
    throw ValidationError("a theta prior proportional to Z* needs a theta-linked prior (case b or c)");
  }
  if (c == InferenceCase::b_linked_exact && prior.n() > kEnumerationLimit && !config.fixed_theta) {
    throw LimitExceeded("case b needs exact Z*, available for n <= " + std::to_string(kEnumerationLimit) +
                        "; use case c");
  }
  if (config.theta_max <= 0.0 || config.zstar_nodes < 2) throw ValidationError("invalid Z* grid settings");
}

McmcTrace run_mcmc(const RankingSample& s, const EmmsPrior& prior, const ThetaPrior& theta_prior,
                   const McmcConfig& config, const DistanceFrequencyTable& table) {
  validate_config(config, prior, theta_prior);
  if (table.n() != s.n()) throw DimensionMismatch(static_cast<std::size_t>(table.n()), static_cast<std::size_t>(s.n()));
  const auto stats = SufficientStats::from(s, prior);
  Rng rng = make_rng(config.seed);

  std::optional<DistanceSpectrum> spectrum;
  std::optional<ZStarGrid> grid;
  if (!config.fixed_theta && config.inference_case == InferenceCase::b_linked_exact && prior.n0() > 0.0) {
    spectrum.emplace(prior.rho0());
    const double eta_max = config.theta_max * prior.n0();
    std::vector<double> nodes(static_cast<std::size_t>(config.zstar_nodes));
    for (int k = 0; k < config.zstar_nodes; ++k) nodes[k] = eta_max * k / (config.zstar_nodes - 1);
    grid.emplace(build_zstar_grid(*spectrum, prior.rho0(), std::move(nodes)));
  }
  ThetaStepContext ctx{&stats, &theta_prior, config.inference_case, &table, grid ? &*grid : nullptr,
                       spectrum ? &*spectrum : nullptr, prior.linked() ? 0.0 : prior.eta0()};

  // Initial state: MLEs when they exist.
  Ranking rho;
  bool have_rho = false;
  if (!s.empty()) {
    try {
      rho = mle_rho(s);
      have_rho = true;
    } catch (const TiesPresent&) {
    }
  }
  if (!have_rho) {
    std::vector<int> r(static_cast<std::size_t>(s.n()));
    std::iota(r.begin(), r.end(), 1);
    for (std::size_t i = r.size(); i > 1; --i) {
      std::swap(r[i - 1], r[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(i) - 1))]);
    }
    rho = Ranking(std::move(r));
  }
  double theta = 0.1;
  if (config.fixed_theta) {
    theta = *config.fixed_theta;
  } else if (have_rho) {
    try {
      const auto est = mle_theta(s, rho, table);
      if (!est.flat && est.theta > 0.0) theta = est.theta;
    } catch (const NumericalError&) {
    }
  }
  if (!config.fixed_theta && theta >= theta_prior.support_upper()) theta = 0.5 * theta_prior.support_upper();

  McmcTrace trace;
  trace.seed = config.seed;
  double sd = config.theta_proposal_sd;
  std::size_t acc_rho = 0, acc_theta = 0, window_acc = 0, window_len = 0;
  const std::size_t kept_iterations = config.iterations - config.burn_in;
  for (std::size_t it = 1; it <= config.iterations; ++it) {
    const auto w = stats.rho_weights(theta, eta0_at(prior, theta));
    const bool moved = mh_step_rho(rho, w, config.leap, rng);
    bool theta_moved = false;
    if (!config.fixed_theta) theta_moved = mh_step_theta(theta, rho, ctx, sd, rng);

    if (it <= config.burn_in) {
      if (config.adapt_during_burnin && !config.fixed_theta) {
        window_acc += theta_moved;
        if (++window_len == 100) {
          const double rate = static_cast<double>(window_acc) / 100.0;
          if (rate > 0.45) sd *= 1.1;
          else if (rate < 0.25) sd /= 1.1;
          window_acc = window_len = 0;
        }
      }
      continue;
    }
    acc_rho += moved;
    acc_theta += theta_moved;
    if ((it - config.burn_in) % config.thin == 0) {
      trace.iteration.push_back(it);
      trace.rho_states.push_back(rho);
      trace.theta_states.push_back(theta);
    }
  }
  trace.accept_rho = static_cast<double>(acc_rho) / static_cast<double>(kept_iterations);
  trace.accept_theta = config.fixed_theta ? 0.0 : static_cast<double>(acc_theta) / static_cast<double>(kept_iterations);
  trace.final_theta_sd = sd;
  return trace;
}

std::vector<McmcTrace> run_chains(const RankingSample& s, const EmmsPrior& prior,
                                  const ThetaPrior& theta_prior, const McmcConfig& config,
                                  const DistanceFrequencyTable& table, int chains) {
  if (chains < 1) throw ValidationError("need at least one chain");
  validate_config(config, prior, theta_prior);
  std::vector<std::future<McmcTrace>> futures;
  for (int c = 0; c < chains; ++c) {
    McmcConfig cfg = config;
    cfg.seed.value = config.seed.value + static_cast<std::uint64_t>(c);
    futures.push_back(std::async(std::launch::async, [&s, &prior, &theta_prior, &table, cfg] {
      return run_mcmc(s, prior, theta_prior, cfg, table);
    }));
  }
  std::vector<McmcTrace> out;
  for (auto& f : futures) out.push_back(f.get());
  return out;
}

McmcTrace merge_traces(const std::vector<McmcTrace>& traces) {
  McmcTrace out;
  if (traces.empty()) return out;
  out.seed = traces.front().seed;
  double total = 0.0;
  for (const auto& t : traces) {
    const double w = static_cast<double>(t.size());
    out.iteration.insert(out.iteration.end(), t.iteration.begin(), t.iteration.end());
    out.rho_states.insert(out.rho_states.end(), t.rho_states.begin(), t.rho_states.end());
    out.theta_states.insert(out.theta_states.end(), t.theta_states.begin(), t.theta_states.end());
    out.accept_rho += w * t.accept_rho;
    out.accept_theta += w * t.accept_theta;
    out.final_theta_sd += w * t.final_theta_sd;
    total += w;
  }
  if (total > 0.0) {
    out.accept_rho /= total;
    out.accept_theta /= total;
    out.final_theta_sd /= total;
  }
  return out;
}

PosteriorSummary summarize(const McmcTrace& trace) {
  if (trace.size() == 0) throw ValidationError("cannot summarize an empty trace");
  PosteriorSummary out;
  out.states = trace.size();
  std::map<Ranking, std::size_t> counts;
  for (const auto& r : trace.rho_states) ++counts[r];
  std::size_t best = 0;
  for (const auto& [r, c] : counts) {
    out.epp.emplace(r, static_cast<double>(c) / static_cast<double>(trace.size()));
    if (c > best) {
      best = c;
      out.map_ranking = r;
      out.map_tied = false;
    } else if (c == best) {
      out.map_tied = true;
    }
  }
  out.theta_mean = std::accumulate(trace.theta_states.begin(), trace.theta_states.end(), 0.0) /
                   static_cast<double>(trace.theta_states.size());
  out.theta_ci = {quantile(trace.theta_states, 0.025), quantile(trace.theta_states, 0.975)};
  return out;
}

double total_variation(const std::map<Ranking, double>& p, const std::map<Ranking, double>& q) {
  double tv = 0.0;
  for (const auto& [r, v] : p) {
    auto it = q.find(r);
    tv += std::abs(v - (it == q.end() ? 0.0 : it->second));
  }
  for (const auto& [r, v] : q) {
    if (!p.count(r)) tv += std::abs(v);
  }
  return 0.5 * tv;
}

double cross_chain_discrepancy(const std::vector<McmcTrace>& traces) {
  std::vector<std::map<Ranking, double>> epps;
  for (const auto& t : traces) epps.push_back(summarize(t).epp);
  double worst = 0.0;
  for (std::size_t a = 0; a < epps.size(); ++a) {
    for (std::size_t b = a + 1; b < epps.size(); ++b) {
      for (const auto* pair : {&epps[a], &epps[b]}) {
        for (const auto& [r, v] : *pair) {
          auto ia = epps[a].find(r);
          auto ib = epps[b].find(r);
          const double va = ia == epps[a].end() ? 0.0 : ia->second;
          const double vb = ib == epps[b].end() ? 0.0 : ib->second;
          worst = std::max(worst, std::abs(va - vb));
        }
      }
    }
  }
  return worst;
}

void write_trace_csv(std::ostream& out, const McmcTrace& trace) {
  out << "iteration,rho,theta\n";
  char buf[64];
  for (std::size_t k = 0; k < trace.size(); ++k) {
    std::snprintf(buf, sizeof buf, "%.17g", trace.theta_states[k]);
    out << trace.iteration[k] << ',' << trace.rho_states[k].str_spaced() << ',' << buf << '\n';
  }
}

}  // namespace mallows
