#include <doctest.h>

#include <cmath>
#include <map>

#include "mallows/errors.hpp"
#include "mallows/model.hpp"
#include "oracle.hpp"

using namespace mallows;

namespace {

RankingSample rows(std::initializer_list<Ranking> rs) { return RankingSample(std::vector<Ranking>(rs)); }

}  // namespace

TEST_CASE("params validation") {
  CHECK_THROWS_AS(MmsParams(Ranking{1, 2}, -0.1), ValidationError);
  CHECK_THROWS_AS(MmsParams(Ranking{1, 2}, std::nan("")), ValidationError);
}

TEST_CASE("pmf against brute force") {
  const auto t = build_frequency_table(4);
  const oracle::Perm rho{2, 1, 4, 3};
  const auto p = oracle::pmf(rho, 0.06);
  const auto all = all_rankings(4);
  double total = 0.0;
  for (std::size_t k = 0; k < all.size(); ++k) {
    const double lp = log_pmf(all[k], MmsParams(Ranking(rho), 0.06), t);
    CHECK(std::exp(lp) == doctest::Approx(p[k]).epsilon(1e-12));
    total += std::exp(lp);
  }
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(std::exp(log_pmf(Ranking{1, 2, 3, 4}, MmsParams(Ranking{4, 3, 2, 1}, 0.0), t)) == doctest::Approx(1.0 / 24));
}

TEST_CASE("log likelihood") {
  const auto t = build_frequency_table(3);
  const auto s = rows({{1, 2, 3}, {2, 1, 3}});
  const MmsParams p(Ranking{1, 2, 3}, 0.5);
  CHECK(log_likelihood(s, p, t) == doctest::Approx(-0.5 * 2 - 2 * std::log(oracle::z(3, 0.5))));
}

TEST_CASE("exact sampler is deterministic and close to the pmf") {
  const MmsParams p(Ranking{2, 1, 4, 3}, 0.06);
  CHECK(sample_exact(p, 50, RngSeed{9}).rows() == sample_exact(p, 50, RngSeed{9}).rows());
  const auto s = sample_exact(p, 100000, RngSeed{1});
  std::map<Ranking, double> freq;
  for (const auto& r : s.rows()) freq[r] += 1.0 / 100000;
  const auto pmf = oracle::pmf({2, 1, 4, 3}, 0.06);
  const auto all = all_rankings(4);
  double tv = 0.0;
  for (std::size_t k = 0; k < all.size(); ++k) tv += 0.5 * std::abs(freq[all[k]] - pmf[k]);
  CHECK(tv < 0.01);
  CHECK_THROWS_AS(sample_exact(MmsParams(Ranking::identity(11), 0.1), 1, RngSeed{1}), LimitExceeded);
}

TEST_CASE("theta = 0 sample is uniform") {
  const auto s = sample_exact(MmsParams(Ranking{1, 2, 3}, 0.0), 60000, RngSeed{4});
  std::map<Ranking, int> c;
  for (const auto& r : s.rows()) ++c[r];
  CHECK(c.size() == 6);
  for (const auto& [r, k] : c) CHECK(std::abs(k - 10000) < 400);
}

TEST_CASE("mcmc sampler agrees with the exact sampler") {
  const MmsParams p(Ranking{3, 1, 2}, 0.3);
  ChainSettings cs;
  cs.thin = 5;
  const auto s = sample_mcmc(p, 40000, cs, RngSeed{8});
  CHECK(s.size() == 40000);
  std::map<Ranking, double> freq;
  for (const auto& r : s.rows()) freq[r] += 1.0 / 40000;
  const auto pmf = oracle::pmf({3, 1, 2}, 0.3);
  const auto all = all_rankings(3);
  for (std::size_t k = 0; k < all.size(); ++k) CHECK(std::abs(freq[all[k]] - pmf[k]) < 0.015);
  CHECK(sample_mcmc(p, 100, cs, RngSeed{8}).rows() == sample_mcmc(p, 100, cs, RngSeed{8}).rows());
}

TEST_CASE("mle rho is the rank of the mean") {
  const auto s = rows({{2, 1, 4, 3}, {1, 2, 4, 3}, {2, 1, 3, 4}});
  CHECK(mle_rho(s) == Ranking{2, 1, 4, 3});
  const auto tied = rows({{1, 2, 3}, {2, 1, 3}});
  CHECK_THROWS_AS(mle_rho(tied), NonUniqueMle);
  try {
    mle_rho(tied);
  } catch (const NonUniqueMle& e) {
    CHECK(e.tied_groups()[0] == std::vector<std::size_t>{0, 1});
  }
}

TEST_CASE("theta moment equation") {
  const auto t = build_frequency_table(4);
  for (double theta : {0.01, 0.06, 0.3, 1.5}) {
    const auto est = solve_theta_moment(expected_distance(theta, t), t);
    CHECK_FALSE(est.flat);
    CHECK(est.theta == doctest::Approx(theta).epsilon(1e-6));
  }
  CHECK(solve_theta_moment(10.0, t).flat);
  CHECK(solve_theta_moment(12.0, t).theta == 0.0);
  CHECK_THROWS_AS(solve_theta_moment(0.0, t), NumericalError);
}

TEST_CASE("mle theta") {
  const auto t = build_frequency_table(3);
  const auto s = rows({{1, 2, 3}, {1, 2, 3}, {2, 1, 3}});
  // mean distance 2/3: solve E[d | theta] = 2/3 by brute-force bisection.
  double lo = 0, hi = 10;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    double num = 0, den = 0;
    for (const auto& p : oracle::perms(3)) {
      const double d = oracle::sq_dist(p, oracle::Perm{1, 2, 3});
      num += d * std::exp(-mid * d);
      den += std::exp(-mid * d);
    }
    (num / den > 2.0 / 3 ? lo : hi) = mid;
  }
  CHECK(mle_theta(s, Ranking{1, 2, 3}, t).theta == doctest::Approx(lo).epsilon(1e-6));
  CHECK_THROWS_AS(mle_theta(RankingSample(3), Ranking{1, 2, 3}, t), ValidationError);
}
