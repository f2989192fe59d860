#pragma once

#include <cmath>
#include <cstdint>
#include <random>

namespace mallows {

/// Seed for every stochastic operation. The generator is mt19937_64.
struct RngSeed {
  std::uint64_t value = 0;
};

using Rng = std::mt19937_64;

inline Rng make_rng(RngSeed seed) { return Rng(seed.value); }

/// Uniform on [0, 1) from the top 53 bits, identical on every platform.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

/// Uniform integer on [lo, hi], rejection-sampled so it is platform stable.
inline int uniform_int(Rng& rng, int lo, int hi) {
  const std::uint64_t span = static_cast<std::uint64_t>(hi - lo) + 1;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % span;
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return lo + static_cast<int>(x % span);
}

/// Standard normal by Box-Muller on uniform01, so traces do not depend on
/// the standard library's normal_distribution.
inline double standard_normal(Rng& rng) {
  double u1;
  do {
    u1 = uniform01(rng);
  } while (u1 <= 0.0);
  const double u2 = uniform01(rng);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
}

}  // namespace mallows
