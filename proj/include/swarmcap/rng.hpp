#pragma once

#include <cstdint>
#include <random>

namespace swarmcap {

// Uniform double in [0, 1) from the top 53 bits. Explicit so runs are
// reproducible independent of the standard library's distribution
// internals.
inline double uniform_unit(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

// Unbiased integer in [0, n) by rejection.
inline int uniform_index(std::mt19937_64& rng, int n) {
  const std::uint64_t un = static_cast<std::uint64_t>(n);
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % un;
  std::uint64_t v;
  do {
    v = rng();
  } while (v >= limit);
  return static_cast<int>(v % un);
}

}  // namespace swarmcap
