#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "approxcover/int_set.hpp"

namespace approxcover {

/// Arithmetic progression {first + i * diff : 0 <= i < size}.
/// Singletons use diff = 1.
struct APShape {
  std::int64_t first = 0;
  std::int64_t diff = 1;
  std::int64_t size = 1;

  std::int64_t last() const { return first + diff * (size - 1); }
  IntSet realize() const;
  friend bool operator==(const APShape&, const APShape&) = default;
};

/// h-fold sumset hA: all sums of h elements of A, repetition allowed.
///
/// Works on the reduced set (A - min A) / gcd and maps back, using binary
/// doubling. As soon as an intermediate jA (j <= h) of the reduced set is
/// an interval, every later fold is an interval too and the result is
/// produced directly.
///
/// Throws InvalidFoldError for h < 1, OverflowError if h * max |A| does
/// not fit in 64 bits.
IntSet hfold(const IntSet& a, std::int64_t h);

/// {1A, 2A, ..., h_max A} computed incrementally.
std::vector<IntSet> hfold_prefix(const IntSet& a, std::int64_t h_max);

std::optional<APShape> detect_ap(const IntSet& a);

struct SizeBound {
  std::int64_t lower_bound = 0;
  bool is_ap = false;
};

/// Size law for hA with m = |A|: exactly hm - h + 1 for progressions,
/// at least hm otherwise.
SizeBound hfold_size_bound(const IntSet& a, std::int64_t h);

}  // namespace approxcover
