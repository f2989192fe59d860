#include "mallows/perm_core.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "mallows/errors.hpp"

namespace mallows {

namespace {

void require_same_size(std::size_t a, std::size_t b) {
  if (a != b) throw DimensionMismatch(a, b);
}

}  // namespace

Ranking::Ranking(std::vector<int> ranks) : ranks_(std::move(ranks)) {
  const int n = size();
  std::vector<char> seen(static_cast<std::size_t>(n) + 1, 0);
  for (std::size_t i = 0; i < ranks_.size(); ++i) {
    const int r = ranks_[i];
    if (r < 1 || r > n) {
      throw ValidationError("rank " + std::to_string(r) + " of item " +
                            std::to_string(i + 1) + " is outside 1.." +
                            std::to_string(n));
    }
    if (seen[r]) {
      throw ValidationError("rank " + std::to_string(r) + " appears more than once");
    }
    seen[r] = 1;
  }
}

Ranking unchecked_ranking(std::vector<int> ranks) {
  return Ranking(std::move(ranks), Ranking::Unchecked{});
}

Ranking Ranking::identity(int n) {
  std::vector<int> r(static_cast<std::size_t>(n));
  std::iota(r.begin(), r.end(), 1);
  return unchecked_ranking(std::move(r));
}

std::string Ranking::str() const {
  std::ostringstream os;
  os << '(';
  for (std::size_t i = 0; i < ranks_.size(); ++i) {
    if (i) os << ',';
    os << ranks_[i];
  }
  os << ')';
  return os.str();
}

std::string Ranking::str_spaced() const {
  std::ostringstream os;
  for (std::size_t i = 0; i < ranks_.size(); ++i) {
    if (i) os << ' ';
    os << ranks_[i];
  }
  return os.str();
}

Ranking parse_ranking(const std::string& text) {
  std::string cleaned;
  cleaned.reserve(text.size());
  for (char c : text) {
    if (c == '(' || c == ')' || c == '[' || c == ']') continue;
    cleaned.push_back(c == ',' ? ' ' : c);
  }
  std::istringstream is(cleaned);
  std::vector<int> ranks;
  std::string tok;
  while (is >> tok) {
    std::size_t used = 0;
    int v = 0;
    try {
      v = std::stoi(tok, &used);
    } catch (const std::exception&) {
      throw ValidationError("not an integer rank: '" + tok + "'");
    }
    if (used != tok.size()) throw ValidationError("not an integer rank: '" + tok + "'");
    ranks.push_back(v);
  }
  if (ranks.empty()) throw ValidationError("empty ranking '" + text + "'");
  return Ranking(std::move(ranks));
}

PermutohedronPoint::PermutohedronPoint(std::vector<double> coords)
    : coords_(std::move(coords)) {
  const int n = size();
  double sum = 0.0;
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    const double x = coords_[i];
    if (!std::isfinite(x) || x < 1.0 - kTieTolerance || x > n + kTieTolerance) {
      throw ValidationError("coordinate " + std::to_string(i + 1) + " = " +
                            std::to_string(x) + " is outside [1, " +
                            std::to_string(n) + "]");
    }
    sum += x;
  }
  const double expected = static_cast<double>(rank_sum(n));
  if (std::abs(sum - expected) > kTieTolerance * std::max(1.0, expected)) {
    throw ValidationError("coordinates sum to " + std::to_string(sum) +
                          ", expected " + std::to_string(expected));
  }
}

PermutohedronPoint::PermutohedronPoint(const Ranking& r)
    : coords_(r.begin(), r.end()) {}

PermutohedronPoint PermutohedronPoint::barycenter(int n) {
  return PermutohedronPoint(std::vector<double>(static_cast<std::size_t>(n), (n + 1) / 2.0));
}

std::string PermutohedronPoint::str() const {
  std::ostringstream os;
  os.precision(12);
  os << '(';
  for (std::size_t i = 0; i < coords_.size(); ++i) {
    if (i) os << ',';
    os << coords_[i];
  }
  os << ')';
  return os.str();
}

RankingSample::RankingSample(std::vector<Ranking> rows) {
  if (rows.empty()) {
    throw ValidationError("cannot infer n from an empty list of rankings");
  }
  n_ = rows.front().size();
  for (auto& r : rows) push_back(std::move(r));
}

RankingSample::RankingSample(int n, std::vector<Ranking> rows) : n_(n) {
  for (auto& r : rows) push_back(std::move(r));
}

void RankingSample::push_back(Ranking r) {
  if (r.size() != n_) require_same_size(static_cast<std::size_t>(n_), r.ranks().size());
  rows_.push_back(std::move(r));
}

std::vector<std::int64_t> RankingSample::column_sums() const {
  std::vector<std::int64_t> sums(static_cast<std::size_t>(n_), 0);
  for (const auto& r : rows_) {
    for (int i = 0; i < n_; ++i) sums[i] += r[i];
  }
  return sums;
}

std::int64_t spearman_distance(const Ranking& a, const Ranking& b) {
  require_same_size(a.ranks().size(), b.ranks().size());
  std::int64_t d = 0;
  for (int i = 0; i < a.size(); ++i) {
    const std::int64_t diff = a[i] - b[i];
    d += diff * diff;
  }
  return d;
}

namespace {

template <class A, class B>
double real_distance(const A& a, const B& b) {
  require_same_size(static_cast<std::size_t>(a.size()), static_cast<std::size_t>(b.size()));
  double d = 0.0;
  for (int i = 0; i < a.size(); ++i) {
    const double diff = static_cast<double>(a[i]) - static_cast<double>(b[i]);
    d += diff * diff;
  }
  return d;
}

}  // namespace

double spearman_distance(const PermutohedronPoint& a, const PermutohedronPoint& b) {
  return real_distance(a, b);
}
double spearman_distance(const Ranking& a, const PermutohedronPoint& b) {
  return real_distance(a, b);
}
double spearman_distance(const PermutohedronPoint& a, const Ranking& b) {
  return real_distance(a, b);
}

double dot(const Ranking& a, std::span<const double> x) {
  require_same_size(a.ranks().size(), x.size());
  double s = 0.0;
  for (int i = 0; i < a.size(); ++i) s += a[i] * x[i];
  return s;
}

std::vector<std::vector<std::size_t>> tied_groups(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<std::vector<std::size_t>> groups;
  for (std::size_t k = 0; k < order.size();) {
    std::size_t m = k + 1;
    while (m < order.size() && x[order[m]] - x[order[m - 1]] <= kTieTolerance) ++m;
    if (m - k > 1) {
      std::vector<std::size_t> g(order.begin() + k, order.begin() + m);
      std::sort(g.begin(), g.end());
      groups.push_back(std::move(g));
    }
    k = m;
  }
  std::sort(groups.begin(), groups.end());
  return groups;
}

Ranking rank_vector(std::span<const double> x) {
  auto groups = tied_groups(x);
  if (!groups.empty()) throw TiesPresent(std::move(groups));
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(),
            [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<int> ranks(x.size());
  for (std::size_t k = 0; k < order.size(); ++k) ranks[order[k]] = static_cast<int>(k) + 1;
  return unchecked_ranking(std::move(ranks));
}

std::vector<double> midrank_vector(std::span<const double> x) {
  std::vector<std::size_t> order(x.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return x[a] < x[b]; });
  std::vector<double> ranks(x.size());
  for (std::size_t k = 0; k < order.size();) {
    std::size_t m = k + 1;
    while (m < order.size() && x[order[m]] - x[order[m - 1]] <= kTieTolerance) ++m;
    // positions k..m-1 hold ranks k+1..m
    const double mid = (static_cast<double>(k + 1) + static_cast<double>(m)) / 2.0;
    for (std::size_t q = k; q < m; ++q) ranks[order[q]] = mid;
    k = m;
  }
  return ranks;
}

Ranking compose(const Ranking& a, const Ranking& b) {
  require_same_size(a.ranks().size(), b.ranks().size());
  std::vector<int> out(a.ranks().size());
  for (int i = 0; i < a.size(); ++i) out[i] = a[b[i] - 1];
  return unchecked_ranking(std::move(out));
}

Ranking inverse(const Ranking& a) {
  std::vector<int> out(a.ranks().size());
  for (int i = 0; i < a.size(); ++i) out[a[i] - 1] = i + 1;
  return unchecked_ranking(std::move(out));
}

PermutohedronPoint sample_mean(const RankingSample& s) {
  if (s.empty()) throw ValidationError("sample mean of an empty sample");
  const auto sums = s.column_sums();
  std::vector<double> mean(sums.size());
  const double count = static_cast<double>(s.size());
  for (std::size_t i = 0; i < sums.size(); ++i) mean[i] = static_cast<double>(sums[i]) / count;
  return PermutohedronPoint(std::move(mean));
}

void for_each_permutation(int n, const std::function<void(std::span<const int>)>& fn) {
  std::vector<int> p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 1);
  do {
    fn(p);
  } while (std::next_permutation(p.begin(), p.end()));
}

std::vector<Ranking> all_rankings(int n) {
  std::vector<Ranking> out;
  out.reserve(static_cast<std::size_t>(factorial(n)));
  for_each_permutation(n, [&](std::span<const int> p) {
    out.push_back(unchecked_ranking(std::vector<int>(p.begin(), p.end())));
  });
  return out;
}

std::int64_t factorial(int n) {
  if (n < 0 || n > 20) throw LimitExceeded("factorial out of 64-bit range");
  std::int64_t f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

}  // namespace mallows
