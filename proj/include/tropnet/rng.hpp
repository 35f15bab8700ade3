#ifndef TROPNET_RNG_HPP
#define TROPNET_RNG_HPP

#include <cstdint>
#include <random>

namespace tropnet {

using Rng = std::mt19937_64;

// Uniform on [0, 1) from the top 53 bits, so results do not depend on the
// standard library's distribution implementation.
inline double uniform01(Rng& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline double uniform(Rng& rng, double lo, double hi) { return lo + (hi - lo) * uniform01(rng); }

// Uniform on {0, ..., n - 1}; n > 0.
inline std::uint64_t uniform_index(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t r;
  do {
    r = rng();
  } while (r >= limit);
  return r % n;
}

}  // namespace tropnet

#endif  // TROPNET_RNG_HPP
