#pragma once

#include <cstdint>
#include <string>

#include "netmoments/error.hpp"

namespace netmoments {

// Exact subgraph counts. 64 bits overflow for 4-node motifs on graphs with
// a few tens of thousands of nodes, so counts are carried in 128 bits.
using Count = unsigned __int128;
using SignedCount = __int128;

inline Count checked_add(Count a, Count b) {
  Count out;
  if (__builtin_add_overflow(a, b, &out)) fail(ErrorCode::overflow, "exact count overflow in addition");
  return out;
}

inline Count checked_mul(Count a, Count b) {
  Count out;
  if (__builtin_mul_overflow(a, b, &out)) fail(ErrorCode::overflow, "exact count overflow in multiplication");
  return out;
}

inline Count checked_sub(Count a, Count b) {
  if (b > a) fail(ErrorCode::overflow, "exact count underflow in subtraction");
  return a - b;
}

/// Exact binomial coefficient C(n, k); zero when k > n.
inline Count binomial(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0;
  if (k > n - k) k = n - k;
  Count out = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    // out * (n - k + i) is divisible by i after the multiplication.
    out = checked_mul(out, n - k + i) / i;
  }
  return out;
}

inline std::string to_string(Count value) {
  if (value == 0) return "0";
  std::string digits;
  while (value > 0) {
    digits.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  return {digits.rbegin(), digits.rend()};
}

inline long double to_long_double(Count value) { return static_cast<long double>(value); }

/// C(n, k) as a floating value, without overflow for large n.
inline long double binomial_ld(std::uint64_t n, std::uint64_t k) {
  if (k > n) return 0.0L;
  if (k > n - k) k = n - k;
  long double out = 1.0L;
  for (std::uint64_t i = 1; i <= k; ++i) {
    out *= static_cast<long double>(n - k + i);
    out /= static_cast<long double>(i);
  }
  return out;
}

}  // namespace netmoments
