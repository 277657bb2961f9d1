#pragma once

#include <cstdint>
#include <random>

namespace possifolio {

// All randomness in the toolkit flows through mt19937_64. The engine is fully
// pinned by the C++ standard, so a seed identifies the same stream on every
// platform; uniform doubles are derived by hand below for the same reason
// (std::uniform_real_distribution is implementation-defined).
using Rng = std::mt19937_64;

/// splitmix64 finalizer; spreads correlated integers into well-mixed seeds.
constexpr std::uint64_t mix64(std::uint64_t z) noexcept {
  z += 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

/// Seed of the independent stream identified by (master, a, b).
/// Used to hand one stream to each grid cell / replica / sample chunk.
constexpr std::uint64_t derive_stream(std::uint64_t master, std::uint64_t a,
                                      std::uint64_t b = 0) noexcept {
  return mix64(mix64(mix64(master) ^ mix64(a + 0x9E3779B97F4A7C15ULL)) ^
               mix64(b + 0x3C6EF372FE94F82AULL));
}

/// Uniform double in [0, 1), 53-bit resolution.
inline double uniform01(Rng& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

/// Uniform double strictly inside (0, 1); safe to feed into quantile functions.
inline double uniform_open01(Rng& rng) {
  return (static_cast<double>(rng() >> 11) + 0.5) * 0x1.0p-53;
}

inline double uniform_range(Rng& rng, double lo, double hi) {
  return lo + (hi - lo) * uniform01(rng);
}

}  // namespace possifolio
