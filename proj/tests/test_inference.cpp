#include <doctest.h>

#include <cmath>
#include <sstream>

#include "mallows/errors.hpp"
#include "mallows/inference.hpp"
#include "mallows/model.hpp"
#include "mallows/reproduce.hpp"
#include "oracle.hpp"

using namespace mallows;

namespace {

const RankingSample& table1() {
  static const auto s = reproduce::table1_sample();
  return s;
}

double total(const std::map<Ranking, double>& m) {
  double t = 0.0;
  for (const auto& [r, p] : m) t += p;
  return t;
}

McmcConfig config(std::size_t iterations, std::uint64_t seed, InferenceCase c) {
  McmcConfig cfg;
  cfg.iterations = iterations;
  cfg.burn_in = 5000;
  cfg.seed = RngSeed{seed};
  cfg.inference_case = c;
  return cfg;
}

}  // namespace

TEST_CASE("theta prior parsing") {
  CHECK(ThetaPrior::parse("jeffreys").kind() == ThetaPrior::Kind::jeffreys);
  CHECK(ThetaPrior::parse("exp:2.5").parameter() == 2.5);
  CHECK(ThetaPrior::parse("flat:3").support_upper() == 3.0);
  CHECK(ThetaPrior::parse("zstar").kind() == ThetaPrior::Kind::zstar_proportional);
  CHECK_THROWS_AS(ThetaPrior::parse("exp:-1"), ValidationError);
  CHECK_THROWS_AS(ThetaPrior::parse("flat:"), ValidationError);
  CHECK_THROWS_AS(ThetaPrior::parse("gamma"), ValidationError);
  CHECK(parse_case("b") == InferenceCase::b_linked_exact);
  CHECK_THROWS_AS(parse_case("d"), ValidationError);
}

TEST_CASE("sufficient statistics") {
  const EmmsPrior prior(reproduce::table1_rho0(), LinkedPrecision{5});
  const auto st = SufficientStats::from(table1(), prior);
  CHECK(st.column_sums == std::vector<std::int64_t>{70, 65, 90, 75});
  CHECK(st.rtilde == std::vector<double>{80, 70, 105, 95});
  CHECK(st.g_tilde == doctest::Approx(65 * 30 + 5 * 30));
}

TEST_CASE("fixed-theta posterior: trivial cases") {
  const RankingSample s(std::vector<Ranking>{{1, 2, 3}, {2, 1, 3}});
  const auto u = exact_posterior_fixed_theta(s, 0.0, EmmsPrior::uniform(3));
  for (const auto& [r, p] : u) CHECK(p == doctest::Approx(1.0 / 6));

  const EmmsPrior prior(PermutohedronPoint{2.5, 2.5, 1, 4}, FixedPrecision{0.4});
  const auto post = exact_posterior_fixed_theta(RankingSample(4), 0.7, prior);
  CHECK(total(post) == doctest::Approx(1.0).epsilon(1e-12));
  for (const auto& [r, p] : post) CHECK(p == doctest::Approx(std::exp(emms_log_density(r, prior, {}, true))));
  CHECK_THROWS_AS(exact_posterior_fixed_theta(RankingSample(9), 0.1, EmmsPrior::uniform(9)), LimitExceeded);
}

TEST_CASE("fixed-theta posterior against brute force") {
  const EmmsPrior prior(PermutohedronPoint{2, 1, 3, 4}, LinkedPrecision{10});
  const double theta = 0.065;
  const auto post = exact_posterior_fixed_theta(table1(), theta, prior);
  std::vector<double> w;
  for (const auto& r : all_rankings(4)) {
    double lp = -theta * 10 * oracle::sq_dist(r.ranks(), prior.rho0().coords());
    for (const auto& x : table1().rows()) lp -= theta * oracle::sq_dist(x.ranks(), r.ranks());
    w.push_back(std::exp(lp));
  }
  const double z = std::accumulate(w.begin(), w.end(), 0.0);
  std::size_t k = 0;
  for (const auto& [r, p] : post) CHECK(p == doctest::Approx(w[k++] / z).epsilon(1e-10));
}

TEST_CASE("joint posterior: uniform case") {
  const auto j = exact_posterior_joint(RankingSample(4), EmmsPrior::uniform(4), ThetaPrior::flat(1.0));
  for (const auto& [r, p] : j.rho) CHECK(p == doctest::Approx(1.0 / 24));
  CHECK(j.theta_mean == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("joint posterior on the simulation data") {
  const EmmsPrior prior(reproduce::table1_rho0(), LinkedPrecision{0});
  const auto j = exact_posterior_joint(table1(), prior, ThetaPrior::jeffreys());
  CHECK(total(j.rho) == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(std::abs(j.rho.at(Ranking{2, 1, 4, 3}) - 0.367) <= 0.02);
  CHECK(std::abs(j.theta_mean - 0.068) <= 0.01);
  // Frozen from this implementation.
  CHECK(j.theta_mean == doctest::Approx(0.0689).epsilon(2e-3));
}

TEST_CASE("joint posterior refuses a grid that misses the mass") {
  CHECK_THROWS_AS(exact_posterior_joint(RankingSample(4), EmmsPrior::uniform(4), ThetaPrior::exponential(1e-9)),
                  ValidationError);
  CHECK_THROWS_AS(exact_posterior_joint(RankingSample(7), EmmsPrior::uniform(7), ThetaPrior::jeffreys()),
                  LimitExceeded);
  CHECK_THROWS_AS(exact_posterior_joint(table1(), EmmsPrior::uniform(4), ThetaPrior::zstar_proportional()),
                  ValidationError);
}

TEST_CASE("dominance comparison holds on every exact posterior") {
  const auto rows = all_rankings(4);
  const Ranking mle = mle_rho(table1());
  for (double n0 : reproduce::kTable1N0) {
    const EmmsPrior prior(reproduce::table1_rho0(), LinkedPrecision{n0});
    const auto j = exact_posterior_joint(table1(), prior, ThetaPrior::jeffreys());
    auto d = [&](const Ranking& r) { return total_distance(table1(), r); };
    auto ds = [&](const Ranking& r) { return spearman_distance(r, prior.rho0()); };
    for (const auto& r : rows) {
      if (ds(r) >= ds(mle)) CHECK(j.rho.at(r) <= j.rho.at(mle) + 1e-12);
    }
    for (const auto& a : rows) {
      for (const auto& b : rows) {
        if (d(a) <= d(b) && ds(a) <= ds(b)) CHECK(j.rho.at(a) >= j.rho.at(b) - 1e-12);
      }
    }
  }
}

TEST_CASE("sensitivity is monotone in N0") {
  double prev_mode = 0.0, prev_far = 1.0;
  for (double n0 : reproduce::kTable1N0) {
    const EmmsPrior prior(reproduce::table1_rho0(), LinkedPrecision{n0});
    const auto j = exact_posterior_joint(table1(), prior, ThetaPrior::jeffreys());
    CHECK(j.rho.at(Ranking{2, 1, 3, 4}) >= prev_mode);
    CHECK(j.rho.at(Ranking{3, 1, 4, 2}) <= prev_far);
    prev_mode = j.rho.at(Ranking{2, 1, 3, 4});
    prev_far = j.rho.at(Ranking{3, 1, 4, 2});
  }
}

TEST_CASE("rho step with a flat target is uniform") {
  Rng rng = make_rng(RngSeed{3});
  Ranking cur = Ranking::identity(4);
  const std::vector<double> zero(4, 0.0);
  std::map<Ranking, int> counts;
  const int steps = 240000;
  for (int k = 0; k < steps; ++k) {
    mh_step_rho(cur, zero, 1, rng);
    ++counts[cur];
  }
  double chi2 = 0.0;
  for (const auto& r : all_rankings(4)) {
    const double e = steps / 24.0;
    chi2 += (counts[r] - e) * (counts[r] - e) / e;
  }
  // Successive states are correlated, so allow well above the iid 99.9%
  // quantile (49.7 on 23 df).
  CHECK(chi2 < 200.0);
}

TEST_CASE("rho step via sufficient statistics") {
  const EmmsPrior prior(reproduce::table1_rho0(), LinkedPrecision{5});
  const auto st = SufficientStats::from(table1(), prior);
  Rng a = make_rng(RngSeed{1}), b = make_rng(RngSeed{1});
  Ranking cur{1, 2, 3, 4};
  const auto next = mh_step_rho(cur, 0.06, st, 0.3, 1, a);
  auto w = st.rho_weights(0.06, 0.3);
  mh_step_rho(cur, w, 1, b);
  CHECK(next == cur);
}

TEST_CASE("theta step") {
  const EmmsPrior prior(reproduce::table1_rho0(), LinkedPrecision{0});
  const auto st = SufficientStats::from(table1(), prior);
  const auto table = build_frequency_table(4);
  const auto tp = ThetaPrior::jeffreys();
  ThetaStepContext ctx{&st, &tp, InferenceCase::a_independent, &table, nullptr, nullptr, 0.0};
  Rng rng = make_rng(RngSeed{2});
  double theta = 0.07;
  int accepted = 0;
  for (int k = 0; k < 1000; ++k) accepted += mh_step_theta(theta, Ranking{2, 1, 4, 3}, ctx, 1e-7, rng);
  CHECK(accepted >= 995);
  CHECK_THROWS_AS(mh_step_theta(theta = 0.0, Ranking{2, 1, 4, 3}, ctx, 0.1, rng), ValidationError);

  ThetaStepContext b = ctx;
  b.inference_case = InferenceCase::b_linked_exact;
  b.stats = &st;
  const EmmsPrior linked(reproduce::table1_rho0(), LinkedPrecision{5});
  const auto st5 = SufficientStats::from(table1(), linked);
  b.stats = &st5;
  CHECK_THROWS_AS(log_theta_conditional(0.1, Ranking{2, 1, 4, 3}, b), ValidationError);

  const auto flat = ThetaPrior::flat(0.1);
  ThetaStepContext f{&st, &flat, InferenceCase::a_independent, &table, nullptr, nullptr, 0.0};
  CHECK(log_theta_conditional(0.2, Ranking{2, 1, 4, 3}, f) == -std::numeric_limits<double>::infinity());
}

TEST_CASE("case a conditional against the joint density") {
  const EmmsPrior prior(PermutohedronPoint{2.5, 2.5, 1, 4}, FixedPrecision{0.3});
  const auto st = SufficientStats::from(table1(), prior);
  const auto table = build_frequency_table(4);
  const auto tp = ThetaPrior::exponential(2.0);
  ThetaStepContext ctx{&st, &tp, InferenceCase::a_independent, &table, nullptr, nullptr, 0.3};
  const Ranking rho{2, 1, 3, 4};
  auto joint = [&](double t) {
    double lp = std::log(2.0) - 2.0 * t - 30 * std::log(oracle::z(4, t));
    for (const auto& x : table1().rows()) lp -= t * oracle::sq_dist(x.ranks(), rho.ranks());
    return lp;
  };
  CHECK(log_theta_conditional(0.1, rho, ctx) - log_theta_conditional(0.05, rho, ctx) ==
        doctest::Approx(joint(0.1) - joint(0.05)).epsilon(1e-9));
}

TEST_CASE("config validation") {
  const EmmsPrior fixed(PermutohedronPoint{2, 1, 3, 4}, FixedPrecision{1});
  const EmmsPrior linked(PermutohedronPoint{2, 1, 3, 4}, LinkedPrecision{1});
  const auto j = ThetaPrior::jeffreys();
  auto cfg = config(6000, 1, InferenceCase::a_independent);
  CHECK_NOTHROW(validate_config(cfg, fixed, j));
  CHECK_THROWS_AS(validate_config(cfg, linked, j), ValidationError);
  cfg.inference_case = InferenceCase::b_linked_exact;
  CHECK_THROWS_AS(validate_config(cfg, fixed, j), ValidationError);
  CHECK_NOTHROW(validate_config(cfg, linked, j));
  cfg.burn_in = 6000;
  CHECK_THROWS_AS(validate_config(cfg, linked, j), ValidationError);
  cfg.burn_in = 10;
  cfg.leap = 4;
  CHECK_THROWS_AS(validate_config(cfg, linked, j), ValidationError);
  cfg.leap = 1;
  cfg.inference_case = InferenceCase::a_independent;
  CHECK_THROWS_AS(validate_config(cfg, fixed, ThetaPrior::zstar_proportional()), ValidationError);
}

TEST_CASE("run_mcmc basics") {
  const EmmsPrior prior(reproduce::table1_rho0(), LinkedPrecision{5});
  const auto table = build_frequency_table(4);
  auto cfg = config(5001, 7, InferenceCase::b_linked_exact);
  CHECK(run_mcmc(table1(), prior, ThetaPrior::jeffreys(), cfg, table).size() == 1);
  cfg.iterations = 20000;
  const auto a = run_mcmc(table1(), prior, ThetaPrior::jeffreys(), cfg, table);
  const auto b = run_mcmc(table1(), prior, ThetaPrior::jeffreys(), cfg, table);
  CHECK(a.rho_states == b.rho_states);
  CHECK(a.theta_states == b.theta_states);
  CHECK(a.size() == 15000);
  CHECK(a.iteration.front() == 5001);
  cfg.thin = 10;
  CHECK(run_mcmc(table1(), prior, ThetaPrior::jeffreys(), cfg, table).size() == 1500);
  CHECK(a.accept_rho > 0.0);
  CHECK(a.accept_theta > 0.1);
}

TEST_CASE("fixed-theta chain matches the exact posterior") {
  const EmmsPrior prior(reproduce::table1_rho0(), LinkedPrecision{10});
  const auto table = build_frequency_table(4);
  auto cfg = config(55000, 3, InferenceCase::b_linked_exact);
  cfg.fixed_theta = 0.065;
  const auto s = summarize(run_mcmc(table1(), prior, ThetaPrior::jeffreys(), cfg, table));
  const auto exact = exact_posterior_fixed_theta(table1(), 0.065, prior);
  for (const auto& [r, p] : exact) {
    auto it = s.epp.find(r);
    CHECK(std::abs((it == s.epp.end() ? 0.0 : it->second) - p) <= 0.01);
  }
  CHECK(s.theta_mean == doctest::Approx(0.065));
}

TEST_CASE("case c is case b with a Z*-proportional prior") {
  const EmmsPrior prior(reproduce::table1_rho0(), LinkedPrecision{5});
  const auto table = build_frequency_table(4);
  const auto b = summarize(run_mcmc(table1(), prior, ThetaPrior::zstar_proportional(),
                                    config(105000, 4, InferenceCase::b_linked_exact), table));
  const auto c = summarize(run_mcmc(table1(), prior, ThetaPrior::jeffreys(),
                                    config(105000, 5, InferenceCase::c_linked_large_n), table));
  const auto exact = exact_posterior_joint(table1(), prior, ThetaPrior::zstar_proportional());
  CHECK(total_variation(b.epp, exact.rho) < 0.02);
  CHECK(total_variation(c.epp, exact.rho) < 0.02);
  CHECK(total_variation(b.epp, c.epp) < 0.03);

  // Same kernel up to a constant in theta.
  const auto st = SufficientStats::from(table1(), prior);
  const DistanceSpectrum spectrum(prior.rho0());
  const auto grid = build_zstar_grid(spectrum, prior.rho0(), [] {
    std::vector<double> g;
    for (int i = 0; i <= 2000; ++i) g.push_back(i * 0.005);
    return g;
  }());
  const auto zp = ThetaPrior::zstar_proportional();
  const auto jp = ThetaPrior::jeffreys();
  const ThetaStepContext cb{&st, &zp, InferenceCase::b_linked_exact, &table, &grid, &spectrum, 0.0};
  const ThetaStepContext cc{&st, &jp, InferenceCase::c_linked_large_n, &table, nullptr, nullptr, 0.0};
  const Ranking rho{2, 1, 4, 3};
  const double offset = log_theta_conditional(0.1, rho, cb) - log_theta_conditional(0.1, rho, cc);
  for (double th : {0.02, 0.05, 0.3, 0.9}) {
    CHECK(log_theta_conditional(th, rho, cb) - log_theta_conditional(th, rho, cc) ==
          doctest::Approx(offset).epsilon(1e-9));
  }
}

TEST_CASE("joint chain theta mean") {
  const EmmsPrior prior(reproduce::table1_rho0(), LinkedPrecision{0});
  const auto table = build_frequency_table(4);
  const auto s = summarize(run_mcmc(table1(), prior, ThetaPrior::jeffreys(),
                                    config(55000, 1, InferenceCase::b_linked_exact), table));
  CHECK(std::abs(s.theta_mean - 0.068) <= 0.01);
  CHECK(s.theta_ci.first < s.theta_mean);
  CHECK(s.theta_ci.second > s.theta_mean);
}

TEST_CASE("chains and merging") {
  const EmmsPrior prior(reproduce::table1_rho0(), LinkedPrecision{5});
  const auto table = build_frequency_table(4);
  const auto cfg = config(25000, 10, InferenceCase::b_linked_exact);
  const auto chains = run_chains(table1(), prior, ThetaPrior::jeffreys(), cfg, table, 3);
  REQUIRE(chains.size() == 3);
  CHECK(chains[1].seed.value == 11);
  CHECK(chains[1].rho_states == run_mcmc(table1(), prior, ThetaPrior::jeffreys(),
                                         config(25000, 11, InferenceCase::b_linked_exact), table).rho_states);
  const auto merged = merge_traces(chains);
  CHECK(merged.size() == 60000);
  CHECK(cross_chain_discrepancy(chains) < 0.05);
  CHECK_THROWS_AS(run_chains(table1(), prior, ThetaPrior::jeffreys(), cfg, table, 0), ValidationError);
}

TEST_CASE("summaries") {
  McmcTrace t;
  CHECK_THROWS_AS(summarize(t), ValidationError);
  for (int k = 0; k < 10; ++k) {
    t.iteration.push_back(k + 1);
    t.rho_states.push_back(Ranking{2, 1, 3});
    t.theta_states.push_back(0.5);
  }
  const auto s = summarize(t);
  CHECK(s.epp.size() == 1);
  CHECK(s.epp.at(Ranking{2, 1, 3}) == 1.0);
  CHECK_FALSE(s.map_tied);
  CHECK(s.theta_ci == std::pair<double, double>{0.5, 0.5});

  t.rho_states[0] = Ranking{1, 2, 3};
  t.rho_states[1] = Ranking{1, 2, 3};
  for (int k = 2; k < 10; ++k) t.rho_states[k] = k < 6 ? Ranking{3, 2, 1} : Ranking{1, 2, 3};
  const auto mixed = summarize(t);
  CHECK(mixed.epp.at(Ranking{1, 2, 3}) == doctest::Approx(0.6));
  CHECK_FALSE(mixed.map_tied);
  CHECK(mixed.map_ranking == Ranking{1, 2, 3});

  std::ostringstream os;
  McmcTrace small;
  small.iteration = {6, 7};
  small.rho_states = {Ranking{2, 1, 3}, Ranking{1, 2, 3}};
  small.theta_states = {0.25, 0.1};
  write_trace_csv(os, small);
  CHECK(os.str() == "iteration,rho,theta\n6,2 1 3,0.25\n7,1 2 3,0.10000000000000001\n");
}

TEST_CASE("map tie flag") {
  McmcTrace t;
  t.iteration = {1, 2};
  t.rho_states = {Ranking{2, 1}, Ranking{1, 2}};
  t.theta_states = {0.1, 0.2};
  const auto s = summarize(t);
  CHECK(s.map_tied);
  CHECK(s.map_ranking == Ranking{1, 2});
}

TEST_CASE("uniform target trace at n = 3") {
  const RankingSample none(3);
  const auto table = build_frequency_table(3);
  McmcConfig cfg;
  cfg.iterations = 105000;
  cfg.burn_in = 5000;
  cfg.fixed_theta = 0.0;
  cfg.seed = RngSeed{12};
  const auto s = summarize(run_mcmc(none, EmmsPrior::uniform(3), ThetaPrior::jeffreys(), cfg, table));
  double lo = 1, hi = 0;
  for (const auto& [r, p] : s.epp) {
    lo = std::min(lo, p);
    hi = std::max(hi, p);
  }
  CHECK(s.epp.size() == 6);
  CHECK(hi - lo < 0.02);
}

TEST_CASE("total variation") {
  const std::map<Ranking, double> p{{Ranking{1, 2}, 0.5}, {Ranking{2, 1}, 0.5}};
  const std::map<Ranking, double> q{{Ranking{1, 2}, 1.0}};
  CHECK(total_variation(p, q) == doctest::Approx(0.5));
  CHECK(total_variation(p, p) == 0.0);
}
