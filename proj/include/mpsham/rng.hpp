#pragma once

#include <cmath>
#include <cstdint>

#include "mpsham/types.hpp"

namespace mpsham {

/// Counter-based random stream: entry k of stream `seed` is a pure function
/// of (seed, k), so draws are identical regardless of evaluation order or
/// thread count.  The mixer is the SplitMix64 finalizer evaluated at a
/// random-access position.
struct CounterRng {
  std::uint64_t seed = 0;

  static std::uint64_t mix(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  std::uint64_t bits(std::uint64_t counter) const {
    return mix(seed + (counter + 1) * 0x9E3779B97F4A7C15ULL);
  }

  /// Uniform in (0, 1], from the top 53 bits.
  double uniform(std::uint64_t counter) const {
    return static_cast<double>((bits(counter) >> 11) + 1) * 0x1.0p-53;
  }

  /// Standard complex Gaussian: Re and Im each N(0,1), via Box-Muller on
  /// counters (2k, 2k+1).
  Complex gaussian(std::uint64_t counter) const {
    double u1 = uniform(2 * counter);
    double u2 = uniform(2 * counter + 1);
    double r = std::sqrt(-2.0 * std::log(u1));
    double t = 2.0 * M_PI * u2;
    return {r * std::cos(t), r * std::sin(t)};
  }
};

/// Stable 64-bit FNV-1a, used for deriving task seeds and config hashes.
inline std::uint64_t fnv1a64(const void* data, std::size_t n,
                             std::uint64_t h = 0xcbf29ce484222325ULL) {
  const unsigned char* p = static_cast<const unsigned char*>(data);
  for (std::size_t i = 0; i < n; ++i) {
    h ^= p[i];
    h *= 0x100000001b3ULL;
  }
  return h;
}

inline std::uint64_t fnv1a64(std::string_view s) {
  return fnv1a64(s.data(), s.size());
}

/// Seed for a named sub-task of a master-seeded run.
inline std::uint64_t derive_seed(std::uint64_t master, std::string_view key) {
  return CounterRng::mix(master ^ fnv1a64(key));
}

}  // namespace mpsham
