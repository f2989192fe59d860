#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace mallows {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data: bad rankings, bad files, inconsistent arguments.
class ValidationError : public Error {
 public:
  using Error::Error;
};

class DimensionMismatch : public ValidationError {
 public:
  DimensionMismatch(std::size_t a, std::size_t b);
};

/// A computation was asked for beyond what exact enumeration supports.
class LimitExceeded : public Error {
 public:
  using Error::Error;
};

/// Divergent or otherwise undefined numerical result.
class NumericalError : public Error {
 public:
  using Error::Error;
};

/// Equal coordinates where a strict ordering was required. Each group holds
/// the 0-based indices sharing one value.
class TiesPresent : public Error {
 public:
  explicit TiesPresent(std::vector<std::vector<std::size_t>> groups);
  explicit TiesPresent(std::vector<std::vector<std::size_t>> groups,
                       const std::string& what);

  const std::vector<std::vector<std::size_t>>& tied_groups() const noexcept {
    return groups_;
  }

 private:
  std::vector<std::vector<std::size_t>> groups_;
};

/// The sample mean has tied coordinates, so the MLE of the consensus is not
/// unique.
class NonUniqueMle : public TiesPresent {
 public:
  explicit NonUniqueMle(std::vector<std::vector<std::size_t>> groups);
};

std::string describe_groups(const std::vector<std::vector<std::size_t>>& groups);

}  // namespace mallows
