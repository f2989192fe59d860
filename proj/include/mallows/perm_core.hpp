#pragma once

// Rankings, points of the permutohedron and the Spearman geometry that ties
// them together.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace mallows {

/// Absolute tolerance used when deciding whether two real coordinates tie.
inline constexpr double kTieTolerance = 1e-9;

/// n(n+1)/2, the coordinate sum of every ranking.
constexpr std::int64_t rank_sum(int n) { return std::int64_t{n} * (n + 1) / 2; }
/// n(n+1)(2n+1)/6, the squared norm of every ranking.
constexpr std::int64_t rank_square_norm(int n) {
  return std::int64_t{n} * (n + 1) * (2 * n + 1) / 6;
}
/// Squared radius n(n^2-1)/12 of the sphere through P_n centred at the
/// barycenter.
constexpr double sphere_radius_sq(int n) {
  return static_cast<double>(n) * (static_cast<double>(n) * n - 1.0) / 12.0;
}
/// Largest Spearman distance between two rankings of n items.
constexpr std::int64_t max_spearman_distance(int n) {
  return std::int64_t{n} * (std::int64_t{n} * n - 1) / 3;
}

/// A full ranking of n items: entry i is the rank (1 = best) of item i.
class Ranking {
 public:
  Ranking() = default;
  /// Throws ValidationError unless `ranks` is a permutation of 1..n.
  explicit Ranking(std::vector<int> ranks);
  Ranking(std::initializer_list<int> ranks) : Ranking(std::vector<int>(ranks)) {}

  static Ranking identity(int n);

  int size() const noexcept { return static_cast<int>(ranks_.size()); }
  int operator[](std::size_t i) const noexcept { return ranks_[i]; }
  std::span<const int> ranks() const noexcept { return ranks_; }
  auto begin() const noexcept { return ranks_.begin(); }
  auto end() const noexcept { return ranks_.end(); }

  /// "(2,1,4,3)"
  std::string str() const;
  /// "2 1 4 3"
  std::string str_spaced() const;

  friend auto operator<=>(const Ranking&, const Ranking&) = default;
  friend bool operator==(const Ranking&, const Ranking&) = default;

 private:
  struct Unchecked {};
  Ranking(std::vector<int> ranks, Unchecked) : ranks_(std::move(ranks)) {}
  friend Ranking unchecked_ranking(std::vector<int> ranks);

  std::vector<int> ranks_;
};

/// Builds a Ranking without validating it. Callers guarantee bijectivity.
Ranking unchecked_ranking(std::vector<int> ranks);

/// Parses "2,1,4,3", "2 1 4 3" or "(2,1,4,3)".
Ranking parse_ranking(const std::string& text);

/// A real n-vector whose coordinates sum to n(n+1)/2 and lie in [1, n].
/// Convex-hull membership beyond these checks is not enforced.
class PermutohedronPoint {
 public:
  PermutohedronPoint() = default;
  explicit PermutohedronPoint(std::vector<double> coords);
  PermutohedronPoint(std::initializer_list<double> coords)
      : PermutohedronPoint(std::vector<double>(coords)) {}
  explicit PermutohedronPoint(const Ranking& r);

  static PermutohedronPoint barycenter(int n);

  int size() const noexcept { return static_cast<int>(coords_.size()); }
  double operator[](std::size_t i) const noexcept { return coords_[i]; }
  std::span<const double> coords() const noexcept { return coords_; }
  auto begin() const noexcept { return coords_.begin(); }
  auto end() const noexcept { return coords_.end(); }

  std::string str() const;

  friend bool operator==(const PermutohedronPoint&, const PermutohedronPoint&) = default;

 private:
  std::vector<double> coords_;
};

/// N observed rankings sharing a common n. N may be zero.
class RankingSample {
 public:
  explicit RankingSample(int n) : n_(n) {}
  /// Throws ValidationError on an empty list; use RankingSample(n) for N = 0.
  explicit RankingSample(std::vector<Ranking> rows);
  RankingSample(int n, std::vector<Ranking> rows);

  int n() const noexcept { return n_; }
  std::size_t size() const noexcept { return rows_.size(); }
  bool empty() const noexcept { return rows_.empty(); }
  const std::vector<Ranking>& rows() const noexcept { return rows_; }
  const Ranking& operator[](std::size_t j) const noexcept { return rows_[j]; }

  void push_back(Ranking r);

  /// Sum over observations of each item's rank (N times the sample mean).
  std::vector<std::int64_t> column_sums() const;

 private:
  int n_ = 0;
  std::vector<Ranking> rows_;
};

std::int64_t spearman_distance(const Ranking& a, const Ranking& b);
double spearman_distance(const PermutohedronPoint& a, const PermutohedronPoint& b);
double spearman_distance(const Ranking& a, const PermutohedronPoint& b);
double spearman_distance(const PermutohedronPoint& a, const Ranking& b);

double dot(const Ranking& a, std::span<const double> x);

/// Strict rank vector Y_i = #{h : x_h <= x_i}. Throws TiesPresent naming the
/// tied index groups when two coordinates agree within kTieTolerance.
Ranking rank_vector(std::span<const double> x);
inline Ranking rank_vector(const PermutohedronPoint& x) { return rank_vector(x.coords()); }
inline Ranking rank_vector(const Ranking& r) { return r; }

/// Rank vector with tied coordinates sharing the mean of the ranks they span.
std::vector<double> midrank_vector(std::span<const double> x);

/// Groups of indices whose coordinates tie; empty when all are distinct.
std::vector<std::vector<std::size_t>> tied_groups(std::span<const double> x);

/// (a o b)_i = a_{b_i}.
Ranking compose(const Ranking& a, const Ranking& b);
Ranking inverse(const Ranking& a);

/// Coordinate-wise mean. Throws ValidationError on an empty sample.
PermutohedronPoint sample_mean(const RankingSample& s);

/// Calls fn(span of ranks) for every permutation of 1..n in lexicographic
/// order.
void for_each_permutation(int n, const std::function<void(std::span<const int>)>& fn);

/// All n! rankings in lexicographic order. Intended for n <= 8.
std::vector<Ranking> all_rankings(int n);

std::int64_t factorial(int n);

}  // namespace mallows
