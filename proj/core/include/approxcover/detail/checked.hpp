#pragma once

#include <cstdint>

#include "approxcover/error.hpp"

namespace approxcover::detail {

inline std::int64_t checked_add(std::int64_t a, std::int64_t b,
                                const char* where) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) throw OverflowError(where);
  return out;
}

inline std::int64_t checked_sub(std::int64_t a, std::int64_t b,
                                const char* where) {
  std::int64_t out;
  if (__builtin_sub_overflow(a, b, &out)) throw OverflowError(where);
  return out;
}

inline std::int64_t checked_mul(std::int64_t a, std::int64_t b,
                                const char* where) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) throw OverflowError(where);
  return out;
}

// Ceiling division for a positive divisor.
inline std::int64_t ceil_div(std::int64_t num, std::int64_t den) {
  std::int64_t q = num / den;
  if ((num % den != 0) && (num > 0)) ++q;
  return q;
}

}  // namespace approxcover::detail
