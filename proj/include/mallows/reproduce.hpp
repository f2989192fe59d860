#pragma once

// Regenerates the reference simulation table and the sushi prior elicitation.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "mallows/inference.hpp"
#include "mallows/prior.hpp"

namespace mallows::reproduce {

// Simulation study. The sample is regenerated from the true parameters with a
// seed picked once so that the column sums are (70, 65, 90, 75), i.e.
// Rbar = (2.33, 2.17, 3, 2.5) after rounding.
inline constexpr std::uint64_t kTable1SampleSeed = 7795;
inline constexpr std::uint64_t kTable1ChainSeed = 1;
inline constexpr double kTable1TrueTheta = 0.06;
inline constexpr std::size_t kTable1SampleSize = 30;
inline constexpr std::array<double, 6> kTable1N0{0, 5, 10, 15, 16, 20};
Ranking table1_true_rho();
PermutohedronPoint table1_rho0();

/// Reference values, rows in lexicographic order of the 24 rankings.
struct PrintedRow {
  Ranking rho;
  int d = 0;
  int d_star = 0;
  std::array<double, 6> epp{};
};
const std::vector<PrintedRow>& table1_printed();
inline constexpr std::array<double, 6> kTable1PrintedThetaMean{0.068, 0.074, 0.065, 0.060, 0.057, 0.055};
inline constexpr double kTable1PrintedThetaMle = 0.08;

RankingSample table1_sample();

struct Table1Options {
  std::size_t iterations = 55000;
  std::size_t burn_in = 5000;
  std::uint64_t seed = kTable1ChainSeed;
  InferenceCase inference_case = InferenceCase::b_linked_exact;
  /// Replace the chains by exact enumeration over (rho, theta).
  bool exact = false;
};

struct Table1Result {
  RankingSample sample{4};
  std::vector<Ranking> rows;                       ///< lexicographic
  std::vector<std::array<double, 6>> epp;          ///< [row][column]
  std::array<double, 6> theta_mean{};
  std::array<Ranking, 6> modal;                    ///< per column, lexicographic tie-break
  std::array<double, 6> accept_rho{};
  std::array<double, 6> accept_theta{};
  double max_abs_delta = 0.0;
};

Table1Result reproduce_table1(const Table1Options& options);

/// One row per ranking, with per-cell deltas against the reference values.
std::string format_table1(const Table1Result& r);

// Sushi covariates and the rank vectors derived from them.
const std::string& sushi_covariates_csv();
/// oil: lower is better; eat, price, sell: higher is better.
std::vector<Orientation> sushi_orientations();

struct SushiResult {
  CovariateElicitation elicitation;
  std::vector<std::string> items;
  std::vector<double> rho02;  ///< midrank vector of rho01
};
SushiResult reproduce_sushi();

/// Reference rank-vector table, rows as "item,oil,eat,price,sell".
const std::string& sushi_printed_table();
inline constexpr std::array<double, 10> kSushiPrintedRho01{5.875, 3.875, 3.625, 5.25, 4.125,
                                                           4.125, 7.625, 3.25,  7.25, 10};
inline constexpr std::array<double, 10> kSushiPrintedRho02{7, 3, 2, 6, 4.5, 4.5, 9, 1, 8, 10};

/// Same layout as sushi_printed_table(), built from computed rank vectors.
std::string format_sushi_table(const SushiResult& r);

}  // namespace mallows::reproduce
