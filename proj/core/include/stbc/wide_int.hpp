#pragma once

// Overflow-checked 128-bit integer helpers. Exact cyclotomic and base-ring
// arithmetic runs on __int128; any overflow throws instead of wrapping.

#include <cstdint>
#include <stdexcept>
#include <string>

namespace stbc {

using wide_int = __int128;

inline wide_int checked_add(wide_int a, wide_int b) {
  wide_int r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("128-bit add overflow");
  return r;
}

inline wide_int checked_sub(wide_int a, wide_int b) {
  wide_int r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("128-bit sub overflow");
  return r;
}

inline wide_int checked_mul(wide_int a, wide_int b) {
  wide_int r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("128-bit mul overflow");
  return r;
}

std::string to_string(wide_int v);

/// Parses a decimal string (optional leading '-') into a wide_int.
wide_int parse_wide_int(const std::string& s);

inline bool fits_int64(wide_int v) {
  return v >= static_cast<wide_int>(INT64_MIN) && v <= static_cast<wide_int>(INT64_MAX);
}

}  // namespace stbc
