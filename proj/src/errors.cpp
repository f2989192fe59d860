#include "mallows/errors.hpp"

#include <sstream>

namespace mallows {

DimensionMismatch::DimensionMismatch(std::size_t a, std::size_t b)
    : ValidationError("dimension mismatch: " + std::to_string(a) + " vs " +
                      std::to_string(b)) {}

std::string describe_groups(const std::vector<std::vector<std::size_t>>& groups) {
  std::ostringstream os;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (g) os << ' ';
    os << '{';
    for (std::size_t k = 0; k < groups[g].size(); ++k) {
      if (k) os << ',';
      os << groups[g][k] + 1;
    }
    os << '}';
  }
  return os.str();
}

TiesPresent::TiesPresent(std::vector<std::vector<std::size_t>> groups)
    : TiesPresent(groups, "tied coordinates at items " + describe_groups(groups)) {}

TiesPresent::TiesPresent(std::vector<std::vector<std::size_t>> groups,
                         const std::string& what)
    : Error(what), groups_(std::move(groups)) {}

NonUniqueMle::NonUniqueMle(std::vector<std::vector<std::size_t>> groups)
    : TiesPresent(groups, "sample mean has tied coordinates at items " +
                              describe_groups(groups) +
                              "; the MLE of the consensus ranking is not unique") {}

}  // namespace mallows
