#pragma once

#include <cstdint>
#include <random>

namespace netmoments {

/// SplitMix64 finalizer; a bijective 64-bit mixer.
constexpr std::uint64_t mix64(std::uint64_t x) noexcept {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

/// Stable child seed for stream `index` of `seed`.
constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t index) noexcept {
  return mix64(mix64(seed) ^ mix64(index ^ 0xD1B54A32D192ED03ULL));
}

constexpr std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b) noexcept {
  return derive_seed(derive_seed(seed, a), b);
}

/// Top 53 bits as a double in [0, 1).
constexpr double to_unit(std::uint64_t x) noexcept { return static_cast<double>(x >> 11) * 0x1.0p-53; }

/// Counter-based uniform draw: a pure function of (seed, stream, i, j).
constexpr double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t i, std::uint64_t j = 0) noexcept {
  return to_unit(mix64(mix64(mix64(seed ^ (stream * 0xA0761D6478BD642FULL)) ^ i) ^ (j * 0xE7037ED1A0B428DBULL)));
}

using Engine = std::mt19937_64;

/// Unbiased integer in [0, bound) by rejection; portable across standard
/// libraries, unlike std::uniform_int_distribution.
inline std::uint64_t uniform_below(Engine& rng, std::uint64_t bound) {
  const std::uint64_t limit = bound * (UINT64_MAX / bound);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % bound;
}

inline double uniform_unit(Engine& rng) { return to_unit(rng()); }

}  // namespace netmoments
