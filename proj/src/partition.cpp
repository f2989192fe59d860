#include "mallows/partition.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <fstream>
#include <future>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <string>

#include "mallows/errors.hpp"
#include "mallows/numeric.hpp"

namespace mallows {

namespace {

BigInt big_factorial(int n) {
  BigInt f = 1;
  for (int k = 2; k <= n; ++k) f *= k;
  return f;
}

void check_theta(double theta) {
  if (!(theta >= 0.0)) throw ValidationError("theta must be >= 0, got " + std::to_string(theta));
}

int enumeration_limit(bool allow_long) {
  return allow_long ? kLongEnumerationLimit : kEnumerationLimit;
}

// Counts distances to the identity for every permutation whose first entry
// is `first`. Indexed by d / 2.
std::vector<std::uint64_t> count_shard(int n, int first) {
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_spearman_distance(n) / 2 + 1), 0);
  std::vector<int> rest;
  for (int v = 1; v <= n; ++v)
    if (v != first) rest.push_back(v);
  const std::int64_t head = std::int64_t{first - 1} * (first - 1);
  do {
    std::int64_t d = head;
    for (int i = 1; i < n; ++i) {
      const std::int64_t diff = rest[i - 1] - (i + 1);
      d += diff * diff;
    }
    ++counts[static_cast<std::size_t>(d / 2)];
  } while (std::next_permutation(rest.begin(), rest.end()));
  return counts;
}

}  // namespace

DistanceFrequencyTable::DistanceFrequencyTable(int n, std::vector<Entry> entries)
    : n_(n), entries_(std::move(entries)) {
  if (n < 1) throw ValidationError("frequency table needs n >= 1");
  std::sort(entries_.begin(), entries_.end(),
            [](const Entry& a, const Entry& b) { return a.distance < b.distance; });
  const std::int64_t d_max = max_spearman_distance(n);
  BigInt sum = 0;
  for (std::size_t k = 0; k < entries_.size(); ++k) {
    const auto& e = entries_[k];
    if (e.distance < 0 || e.distance > d_max || e.distance % 2 != 0) {
      throw ValidationError("invalid distance " + std::to_string(e.distance) + " for n=" +
                            std::to_string(n));
    }
    if (k > 0 && entries_[k - 1].distance == e.distance) {
      throw ValidationError("duplicate distance " + std::to_string(e.distance));
    }
    if (e.count <= 0) {
      throw ValidationError("non-positive count at distance " + std::to_string(e.distance));
    }
    sum += e.count;
  }
  if (sum != big_factorial(n)) {
    throw ValidationError("counts sum to " + sum.str() + ", expected n! = " +
                          big_factorial(n).str());
  }
  if (count(0) != 1) throw ValidationError("count(0) must be 1");
  for (const auto& e : entries_) {
    if (count(d_max - e.distance) != e.count) {
      throw ValidationError("table is not symmetric at distance " + std::to_string(e.distance));
    }
  }
  log_counts_.reserve(entries_.size());
  for (const auto& e : entries_) {
    log_counts_.push_back(std::log(e.count.convert_to<double>()));
  }
}

BigInt DistanceFrequencyTable::count(std::int64_t d) const {
  auto it = std::lower_bound(entries_.begin(), entries_.end(), d,
                             [](const Entry& e, std::int64_t v) { return e.distance < v; });
  if (it == entries_.end() || it->distance != d) return 0;
  return it->count;
}

BigInt DistanceFrequencyTable::total() const {
  BigInt s = 0;
  for (const auto& e : entries_) s += e.count;
  return s;
}

DistanceFrequencyTable build_frequency_table(int n, bool allow_long) {
  if (n < 1) throw ValidationError("n must be >= 1");
  if (n > enumeration_limit(allow_long)) {
    throw LimitExceeded("n=" + std::to_string(n) + " is above the enumeration limit " +
                        std::to_string(enumeration_limit(allow_long)) +
                        "; load a precomputed frequency table from file instead");
  }
  std::vector<std::future<std::vector<std::uint64_t>>> shards;
  for (int first = 1; first <= n; ++first) {
    shards.push_back(std::async(n >= 8 ? std::launch::async : std::launch::deferred,
                                count_shard, n, first));
  }
  std::vector<std::uint64_t> counts(static_cast<std::size_t>(max_spearman_distance(n) / 2 + 1), 0);
  for (auto& f : shards) {
    const auto part = f.get();
    for (std::size_t k = 0; k < part.size(); ++k) counts[k] += part[k];
  }
  std::vector<DistanceFrequencyTable::Entry> entries;
  for (std::size_t k = 0; k < counts.size(); ++k) {
    if (counts[k]) entries.push_back({static_cast<std::int64_t>(2 * k), BigInt(counts[k])});
  }
  return DistanceFrequencyTable(n, std::move(entries));
}

DistanceMoments distance_moments(double theta, const DistanceFrequencyTable& table) {
  check_theta(theta);
  const auto& entries = table.entries();
  const auto& lc = table.log_counts();
  std::vector<double> terms(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    terms[k] = lc[k] - theta * static_cast<double>(entries[k].distance);
  }
  const double lz = log_sum_exp(terms);
  double mean = 0.0;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    mean += std::exp(terms[k] - lz) * static_cast<double>(entries[k].distance);
  }
  double var = 0.0;
  for (std::size_t k = 0; k < entries.size(); ++k) {
    const double c = static_cast<double>(entries[k].distance) - mean;
    var += std::exp(terms[k] - lz) * c * c;
  }
  return {lz, mean, var};
}

double log_z(double theta, const DistanceFrequencyTable& table) {
  check_theta(theta);
  const auto& entries = table.entries();
  const auto& lc = table.log_counts();
  std::vector<double> terms(entries.size());
  for (std::size_t k = 0; k < entries.size(); ++k) {
    terms[k] = lc[k] - theta * static_cast<double>(entries[k].distance);
  }
  return log_sum_exp(terms);
}

double expected_distance(double theta, const DistanceFrequencyTable& table) {
  return distance_moments(theta, table).mean;
}

double variance_distance(double theta, const DistanceFrequencyTable& table) {
  return distance_moments(theta, table).variance;
}

double jeffreys_log_density(double theta, const DistanceFrequencyTable& table) {
  const double v = variance_distance(theta, table);
  if (!(v > 0.0)) return -std::numeric_limits<double>::infinity();
  return 0.5 * std::log(v);
}

DistanceSpectrum::DistanceSpectrum(const PermutohedronPoint& rho0, bool allow_long)
    : n_(rho0.size()) {
  if (n_ < 1) throw ValidationError("empty prior mode");
  if (n_ > enumeration_limit(allow_long)) {
    throw LimitExceeded("exact Z* needs enumeration of P_" + std::to_string(n_) +
                        "; use a theta-linked prior proportional to Z* instead");
  }
  std::vector<double> d;
  d.reserve(static_cast<std::size_t>(factorial(n_)));
  const auto x = rho0.coords();
  std::vector<int> p(static_cast<std::size_t>(n_));
  std::iota(p.begin(), p.end(), 1);
  do {
    double s = 0.0;
    for (int i = 0; i < n_; ++i) {
      const double diff = x[i] - p[i];
      s += diff * diff;
    }
    d.push_back(s);
  } while (std::next_permutation(p.begin(), p.end()));
  std::sort(d.begin(), d.end());
  for (std::size_t k = 0; k < d.size();) {
    std::size_t m = k + 1;
    while (m < d.size() && d[m] - d[k] <= 1e-9 * std::max(1.0, d[k])) ++m;
    values_.emplace_back(d[k], static_cast<std::int64_t>(m - k));
    k = m;
  }
  log_mult_.reserve(values_.size());
  for (const auto& [v, c] : values_) log_mult_.push_back(std::log(static_cast<double>(c)));
}

double DistanceSpectrum::log_z_star(double eta0) const {
  if (!(eta0 >= 0.0)) throw ValidationError("eta0 must be >= 0");
  std::vector<double> terms(values_.size());
  for (std::size_t k = 0; k < values_.size(); ++k) {
    terms[k] = log_mult_[k] - eta0 * values_[k].first;
  }
  return log_sum_exp(terms);
}

double log_z_star(double eta0, const PermutohedronPoint& rho0) {
  return DistanceSpectrum(rho0).log_z_star(eta0);
}

ZStarGrid::ZStarGrid(PermutohedronPoint rho0, std::vector<double> eta_grid,
                     std::vector<double> log_zstar_values)
    : rho0_(std::move(rho0)), eta_(std::move(eta_grid)), values_(std::move(log_zstar_values)) {
  if (eta_.size() < 2 || eta_.size() != values_.size()) {
    throw ValidationError("Z* grid needs at least two nodes with one value each");
  }
  for (std::size_t k = 0; k < eta_.size(); ++k) {
    if (!std::isfinite(values_[k])) throw ValidationError("non-finite log Z* value in grid");
    if (k > 0 && !(eta_[k] > eta_[k - 1])) {
      throw ValidationError("Z* grid must be strictly increasing");
    }
  }
  if (eta_.front() < 0.0) throw ValidationError("Z* grid must be nonnegative");
}

double ZStarGrid::interpolate(double eta0) const {
  if (!(eta0 >= eta_.front() && eta0 <= eta_.back())) {
    throw std::out_of_range("eta0 = " + std::to_string(eta0) + " outside Z* grid [" +
                            std::to_string(eta_.front()) + ", " + std::to_string(eta_.back()) +
                            "]; extrapolation refused");
  }
  auto it = std::lower_bound(eta_.begin(), eta_.end(), eta0);
  const auto k = static_cast<std::size_t>(it - eta_.begin());
  if (*it == eta0) return values_[k];
  const double t = (eta0 - eta_[k - 1]) / (eta_[k] - eta_[k - 1]);
  return (1.0 - t) * values_[k - 1] + t * values_[k];
}

ZStarGrid build_zstar_grid(const PermutohedronPoint& rho0, std::vector<double> eta_grid) {
  return build_zstar_grid(DistanceSpectrum(rho0), rho0, std::move(eta_grid));
}

ZStarGrid build_zstar_grid(const DistanceSpectrum& spectrum, const PermutohedronPoint& rho0,
                           std::vector<double> eta_grid) {
  if (spectrum.n() != rho0.size()) {
    throw DimensionMismatch(static_cast<std::size_t>(spectrum.n()), static_cast<std::size_t>(rho0.size()));
  }
  std::vector<double> values;
  values.reserve(eta_grid.size());
  for (double eta : eta_grid) values.push_back(spectrum.log_z_star(eta));
  return ZStarGrid(rho0, std::move(eta_grid), std::move(values));
}

ZStarGrid build_zstar_grid(const PermutohedronPoint& rho0, double eta_max, int nodes) {
  if (nodes < 2 || !(eta_max > 0.0)) {
    throw ValidationError("Z* grid needs eta_max > 0 and at least two nodes");
  }
  std::vector<double> grid(static_cast<std::size_t>(nodes));
  for (int k = 0; k < nodes; ++k) grid[k] = eta_max * k / (nodes - 1);
  return build_zstar_grid(rho0, std::move(grid));
}

double interpolate_log_zstar(const ZStarGrid& grid, double eta0) {
  return grid.interpolate(eta0);
}

void save_table(const DistanceFrequencyTable& table, std::ostream& out) {
  out << "n=" << table.n() << '\n';
  out << "factorial=" << big_factorial(table.n()).str() << '\n';
  for (const auto& e : table.entries()) out << e.distance << ' ' << e.count.str() << '\n';
  out << "checksum=" << table.total().str() << '\n';
}

void save_table(const DistanceFrequencyTable& table, const std::filesystem::path& path) {
  std::ofstream out(path);
  if (!out) throw ValidationError("cannot write " + path.string());
  save_table(table, out);
  if (!out) throw ValidationError("failed writing " + path.string());
}

namespace {

std::string value_after(const std::string& line, const std::string& key, int line_no) {
  if (line.rfind(key + "=", 0) != 0) {
    throw ValidationError("line " + std::to_string(line_no) + ": expected '" + key +
                          "=<value>', got '" + line + "'");
  }
  return line.substr(key.size() + 1);
}

BigInt parse_big(const std::string& s, int line_no) {
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](unsigned char c) { return std::isdigit(c); })) {
    throw ValidationError("line " + std::to_string(line_no) + ": '" + s +
                          "' is not a nonnegative integer");
  }
  return BigInt(s);
}

}  // namespace

DistanceFrequencyTable load_table(std::istream& in) {
  std::vector<std::string> lines;
  for (std::string line; std::getline(in, line);) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    lines.push_back(line);
  }
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.size() < 3) throw ValidationError("frequency table file is truncated");

  const BigInt n_big = parse_big(value_after(lines[0], "n", 1), 1);
  if (n_big < 1 || n_big > 1000) throw ValidationError("line 1: unsupported n");
  const int n = n_big.convert_to<int>();
  const BigInt fact = parse_big(value_after(lines[1], "factorial", 2), 2);
  if (fact != big_factorial(n)) {
    throw ValidationError("line 2: factorial " + fact.str() + " is not " + std::to_string(n) + "!");
  }
  const BigInt checksum = parse_big(value_after(lines.back(), "checksum", static_cast<int>(lines.size())),
                                    static_cast<int>(lines.size()));

  std::vector<DistanceFrequencyTable::Entry> entries;
  BigInt sum = 0;
  for (std::size_t k = 2; k + 1 < lines.size(); ++k) {
    const int line_no = static_cast<int>(k) + 1;
    std::istringstream is(lines[k]);
    std::string d_str, c_str, extra;
    if (!(is >> d_str >> c_str) || (is >> extra)) {
      throw ValidationError("line " + std::to_string(line_no) + ": expected '<d> <count>'");
    }
    const BigInt d = parse_big(d_str, line_no);
    if (d > BigInt(max_spearman_distance(n))) {
      throw ValidationError("line " + std::to_string(line_no) + ": distance out of range");
    }
    if (!entries.empty() && d.convert_to<std::int64_t>() <= entries.back().distance) {
      throw ValidationError("line " + std::to_string(line_no) + ": distances must increase");
    }
    entries.push_back({d.convert_to<std::int64_t>(), parse_big(c_str, line_no)});
    sum += entries.back().count;
  }
  if (sum != checksum) {
    throw ValidationError("checksum mismatch: counts sum to " + sum.str() + ", file says " +
                          checksum.str());
  }
  return DistanceFrequencyTable(n, std::move(entries));
}

DistanceFrequencyTable load_table(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open " + path.string());
  try {
    return load_table(in);
  } catch (const ValidationError& e) {
    throw ValidationError(path.string() + ": " + e.what());
  }
}

std::filesystem::path cached_table_path(const std::filesystem::path& dir, int n) {
  return dir / ("ztable_n" + std::to_string(n) + ".txt");
}

DistanceFrequencyTable table_for(int n, const std::filesystem::path& cache_dir, bool allow_long) {
  if (!cache_dir.empty()) {
    const auto path = cached_table_path(cache_dir, n);
    if (std::filesystem::exists(path)) {
      auto t = load_table(path);
      if (t.n() != n) throw ValidationError(path.string() + " holds a table for n=" + std::to_string(t.n()));
      return t;
    }
  }
  auto t = build_frequency_table(n, allow_long);
  if (!cache_dir.empty()) {
    std::error_code ec;
    std::filesystem::create_directories(cache_dir, ec);
    if (!ec) save_table(t, cached_table_path(cache_dir, n));
  }
  return t;
}

}  // namespace mallows
