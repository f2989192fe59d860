#pragma once

// Partition functions of the Spearman Mallows model and its extended prior.
//
// Everything is evaluated in log space from the distance-frequency table
// count(d) = #{r in P_n : ||r - id||^2 = d}. The table is exact (big integer
// counts) and lossless on disk.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mallows/perm_core.hpp"

namespace mallows {

using BigInt = boost::multiprecision::cpp_int;

/// Largest n whose table is built by enumeration unless the caller opts in.
inline constexpr int kEnumerationLimit = 10;
/// Hard ceiling for opt-in enumeration (13! is about 6.2e9 permutations).
inline constexpr int kLongEnumerationLimit = 13;

class DistanceFrequencyTable {
 public:
  struct Entry {
    std::int64_t distance;
    BigInt count;
    friend bool operator==(const Entry&, const Entry&) = default;
  };

  /// Validates: sum of counts = n!, distances even and within
  /// [0, n(n^2-1)/3], count(0) = 1, count(d) = count(d_max - d).
  DistanceFrequencyTable(int n, std::vector<Entry> entries);

  int n() const noexcept { return n_; }
  const std::vector<Entry>& entries() const noexcept { return entries_; }
  /// Zero when d is not realized.
  BigInt count(std::int64_t d) const;
  BigInt total() const;

  /// log count(d) for each entry, aligned with entries().
  const std::vector<double>& log_counts() const noexcept { return log_counts_; }

  friend bool operator==(const DistanceFrequencyTable& a, const DistanceFrequencyTable& b) {
    return a.n_ == b.n_ && a.entries_ == b.entries_;
  }

 private:
  int n_;
  std::vector<Entry> entries_;
  std::vector<double> log_counts_;
};

/// Exact table by enumerating P_n. Throws LimitExceeded for n > limit, where
/// limit is kEnumerationLimit, or kLongEnumerationLimit when allow_long.
DistanceFrequencyTable build_frequency_table(int n, bool allow_long = false);

/// log Z(theta) = log sum_d count(d) exp(-theta d).
double log_z(double theta, const DistanceFrequencyTable& table);
/// E[d(R, id) | theta] = -(log Z)'(theta).
double expected_distance(double theta, const DistanceFrequencyTable& table);
/// Var[d(R, id) | theta] = (log Z)''(theta).
double variance_distance(double theta, const DistanceFrequencyTable& table);

struct DistanceMoments {
  double log_z;
  double mean;
  double variance;
};
DistanceMoments distance_moments(double theta, const DistanceFrequencyTable& table);

/// Unnormalized log Jeffreys density 0.5 log Var[d | theta]; -inf once the
/// variance underflows to zero.
double jeffreys_log_density(double theta, const DistanceFrequencyTable& table);

/// The multiset {||rho0 - rho||^2 : rho in P_n}, compressed to distinct
/// values with multiplicities. Built once by enumeration, then Z*(eta) for
/// any eta is a short log-sum-exp.
class DistanceSpectrum {
 public:
  DistanceSpectrum(const PermutohedronPoint& rho0, bool allow_long = false);

  double log_z_star(double eta0) const;
  int n() const noexcept { return n_; }
  const std::vector<std::pair<double, std::int64_t>>& values() const noexcept { return values_; }

 private:
  int n_;
  std::vector<std::pair<double, std::int64_t>> values_;
  std::vector<double> log_mult_;
};

/// Exact log Z*(eta0, rho0) = log sum_{rho in P_n} exp(-eta0 ||rho0 - rho||^2).
double log_z_star(double eta0, const PermutohedronPoint& rho0);

/// log Z* tabulated on an increasing grid of eta0 values.
class ZStarGrid {
 public:
  ZStarGrid(PermutohedronPoint rho0, std::vector<double> eta_grid,
            std::vector<double> log_zstar_values);

  const PermutohedronPoint& rho0() const noexcept { return rho0_; }
  const std::vector<double>& eta_grid() const noexcept { return eta_; }
  const std::vector<double>& log_zstar_values() const noexcept { return values_; }
  double eta_min() const noexcept { return eta_.front(); }
  double eta_max() const noexcept { return eta_.back(); }

  /// Linear interpolation of log Z*; exact at nodes. Throws
  /// std::out_of_range outside [eta_min, eta_max].
  double interpolate(double eta0) const;

 private:
  PermutohedronPoint rho0_;
  std::vector<double> eta_;
  std::vector<double> values_;
};

inline constexpr int kDefaultZStarNodes = 2048;

ZStarGrid build_zstar_grid(const PermutohedronPoint& rho0, std::vector<double> eta_grid);
ZStarGrid build_zstar_grid(const DistanceSpectrum& spectrum, const PermutohedronPoint& rho0,
                           std::vector<double> eta_grid);
/// `nodes` points uniformly spaced on [0, eta_max].
ZStarGrid build_zstar_grid(const PermutohedronPoint& rho0, double eta_max,
                           int nodes = kDefaultZStarNodes);
double interpolate_log_zstar(const ZStarGrid& grid, double eta0);

void save_table(const DistanceFrequencyTable& table, std::ostream& out);
void save_table(const DistanceFrequencyTable& table, const std::filesystem::path& path);
DistanceFrequencyTable load_table(std::istream& in);
DistanceFrequencyTable load_table(const std::filesystem::path& path);

/// Table for n from `cache_dir` if present there, else built by
/// enumeration (and written to `cache_dir` when it is non-empty).
DistanceFrequencyTable table_for(int n, const std::filesystem::path& cache_dir = {},
                                 bool allow_long = false);
std::filesystem::path cached_table_path(const std::filesystem::path& dir, int n);

}  // namespace mallows
