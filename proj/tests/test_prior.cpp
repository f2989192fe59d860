#include <doctest.h>

#include <cmath>

#include "mallows/errors.hpp"
#include "mallows/model.hpp"
#include "mallows/partition.hpp"
#include "mallows/prior.hpp"
#include "oracle.hpp"

using namespace mallows;

TEST_CASE("prior construction") {
  CHECK_THROWS_AS(EmmsPrior(PermutohedronPoint{1, 2}, FixedPrecision{-1}), ValidationError);
  CHECK_THROWS_AS(EmmsPrior(PermutohedronPoint{1, 2}, LinkedPrecision{-1}), ValidationError);
  const EmmsPrior linked(PermutohedronPoint{2, 1, 3, 4}, LinkedPrecision{5});
  CHECK(linked.linked());
  CHECK(linked.eta0(0.2) == doctest::Approx(1.0));
  CHECK_THROWS_AS(linked.eta0(), ValidationError);
  CHECK(EmmsPrior::uniform(4).eta0() == 0.0);
}

TEST_CASE("normalized EMMS density sums to one") {
  const EmmsPrior prior(PermutohedronPoint{2.5, 2.5, 1, 4}, FixedPrecision{0.8});
  double total = 0.0;
  for (const auto& r : all_rankings(4)) total += std::exp(emms_log_density(r, prior, std::nullopt, true));
  CHECK(total == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("posterior update") {
  const RankingSample s(std::vector<Ranking>{{1, 2, 3}, {2, 1, 3}, {1, 3, 2}});
  const EmmsPrior prior(PermutohedronPoint{3, 2, 1}, FixedPrecision{0.5});
  const auto pp = posterior_update(prior, s, 0.2);
  CHECK(pp.eta_n == doctest::Approx(0.5 + 0.2 * 3));
  // (theta * sums + eta0 * rho0) / eta_N, sums = (4, 6, 8)
  CHECK(pp.rho_n[0] == doctest::Approx((0.2 * 4 + 0.5 * 3) / 1.1));
  CHECK(pp.rho_n[1] == doctest::Approx((0.2 * 6 + 0.5 * 2) / 1.1));
  CHECK(pp.rho_n[2] == doctest::Approx((0.2 * 8 + 0.5 * 1) / 1.1));
  CHECK(posterior_update(prior, RankingSample(3), 0.2).rho_n == prior.rho0());
  CHECK(posterior_update(EmmsPrior::uniform(3), s, 0.2).rho_n == sample_mean(s));
  CHECK(map_estimate(pp) == rank_vector(pp.rho_n));
}

TEST_CASE("dominance comparison is exact") {
  // Two observations, rho0 on the segment between them.
  const RankingSample s(std::vector<Ranking>{{2, 1, 4, 3}, {2, 1, 4, 3}});
  const PermutohedronPoint rho0{2, 1, 3, 4};
  // D(2134) - D(2143) = 4, D*(2143) - D*(2134) = 2: the break-even gamma is 2.
  CHECK(theorem1_compare(Ranking{2, 1, 3, 4}, Ranking{2, 1, 4, 3}, s, rho0, 2.0) == Comparison::equal);
  CHECK(theorem1_compare(Ranking{2, 1, 3, 4}, Ranking{2, 1, 4, 3}, s, rho0, 2.0000001) == Comparison::first_higher);
  CHECK(theorem1_compare(Ranking{2, 1, 3, 4}, Ranking{2, 1, 4, 3}, s, rho0, 1.9999999) == Comparison::second_higher);
  CHECK(theorem1_compare(Ranking{2, 1, 4, 3}, Ranking{2, 1, 3, 4}, s, rho0, 0.0) == Comparison::first_higher);
  CHECK(total_distance(s, Ranking{2, 1, 3, 4}) == 4);
}

TEST_CASE("dominance comparison agrees with brute-force posterior ratios") {
  const RankingSample s(std::vector<Ranking>{{1, 3, 2, 4}, {2, 1, 4, 3}, {1, 2, 4, 3}});
  const PermutohedronPoint rho0{2.5, 2.5, 1, 4};
  const double theta = 0.3;
  for (double gamma : {0.0, 0.5, 1.0, 3.0}) {
    for (const auto& a : all_rankings(4)) {
      for (const auto& b : all_rankings(4)) {
        double la = 0, lb = 0;
        for (const auto& r : s.rows()) {
          la -= theta * oracle::sq_dist(r.ranks(), a.ranks());
          lb -= theta * oracle::sq_dist(r.ranks(), b.ranks());
        }
        la -= gamma * theta * oracle::sq_dist(rho0.coords(), a.ranks());
        lb -= gamma * theta * oracle::sq_dist(rho0.coords(), b.ranks());
        const auto c = theorem1_compare(a, b, s, rho0, gamma);
        if (la > lb + 1e-9) CHECK(c == Comparison::first_higher);
        if (lb > la + 1e-9) CHECK(c == Comparison::second_higher);
      }
    }
  }
}

TEST_CASE("top-k elicitation") {
  const auto p = elicit_topk(5, {{0, 1}, {3, 2}, {2, 3}});
  CHECK(std::vector<double>(p.begin(), p.end()) == std::vector<double>{1, 4.5, 3, 2, 4.5});
  CHECK(elicit_topk(4, {}) == PermutohedronPoint::barycenter(4));
  CHECK_THROWS_AS(elicit_topk(4, {{0, 1}, {1, 1}}), ValidationError);
  CHECK_THROWS_AS(elicit_topk(4, {{0, 2}}), ValidationError);
  CHECK_THROWS_AS(elicit_topk(4, {{7, 1}}), ValidationError);
}

TEST_CASE("multi-expert elicitation") {
  const PermutohedronPoint a{1, 2, 3}, b{3, 2, 1};
  CHECK(elicit_multi_expert({a, b}) == PermutohedronPoint{2, 2, 2});
  const auto w = elicit_multi_expert({a, b}, {0.75, 0.25});
  CHECK(w[0] == doctest::Approx(1.5));
  CHECK_THROWS_AS(elicit_multi_expert({a, b}, {0.5, 0.6}), ValidationError);
  CHECK_THROWS_AS(elicit_multi_expert({a, b}, {1.5, -0.5}), ValidationError);
  CHECK_THROWS_AS(elicit_multi_expert({}), ValidationError);
  CHECK_THROWS_AS(elicit_multi_expert({a, PermutohedronPoint{1, 2}}), DimensionMismatch);
}

TEST_CASE("covariate elicitation") {
  const auto t = parse_covariates_csv("item,size,cost\nx,3,1\ny,1,2\nz,2,3\n");
  SUBCASE("single covariate gives its midrank vector") {
    const auto e = elicit_from_covariates(parse_covariates_csv("item,size\nx,3\ny,1\nz,2\n"), {});
    CHECK(e.rank_vectors[0] == std::vector<double>{1, 3, 2});
    CHECK(e.rho0 == PermutohedronPoint{1, 3, 2});
  }
  SUBCASE("orientation") {
    const auto e = elicit_from_covariates(t, {Orientation::lower_is_better, Orientation::higher_is_better});
    CHECK(e.rank_vectors[0] == std::vector<double>{3, 1, 2});
    CHECK(e.rank_vectors[1] == std::vector<double>{3, 2, 1});
    CHECK(e.rho0 == PermutohedronPoint{3, 1.5, 1.5});
  }
  SUBCASE("constant covariate warns") {
    const auto e = elicit_from_covariates(parse_covariates_csv("item,c\nx,1\ny,1\nz,1\n"), {});
    CHECK(e.rank_vectors[0] == std::vector<double>{2, 2, 2});
    CHECK(e.warnings.size() == 1);
  }
  CHECK_THROWS_AS(parse_covariates_csv("item,a\nx,\n"), ValidationError);
  CHECK_THROWS_AS(parse_covariates_csv("item,a,b\nx,1\n"), ValidationError);
  CHECK_THROWS_AS(parse_covariates_csv(""), ValidationError);
}
