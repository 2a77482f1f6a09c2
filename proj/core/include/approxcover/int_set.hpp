#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <string>
#include <string_view>
#include <vector>

#include "approxcover/error.hpp"

namespace approxcover {

/// Maximal block of consecutive integers [lo, hi] contained in a set.
struct Run {
  std::int64_t lo = 0;
  std::int64_t hi = 0;

  std::int64_t length() const { return hi - lo + 1; }
  friend bool operator==(const Run&, const Run&) = default;
};

/// Inclusive integer range [first, last], used for h-windows and r-ranges.
struct IndexRange {
  std::int64_t first = 1;
  std::int64_t last = 1;

  bool contains(std::int64_t v) const { return first <= v && v <= last; }
  std::int64_t count() const { return last < first ? 0 : last - first + 1; }
  friend bool operator==(const IndexRange&, const IndexRange&) = default;
};

/// Parses "a..b" or a single integer "a" (meaning a..a).
IndexRange parse_index_range(std::string_view text);
std::string format_index_range(const IndexRange& range);

/// Finite set of 64-bit integers with value semantics.
///
/// Elements are kept either as a bitset over [min, max] (dense) or as a
/// strictly increasing vector (sparse). The layout is chosen from the
/// span/size ratio unless forced; equality is extensional, so two sets
/// with different layouts compare equal when they hold the same elements.
///
/// The default-constructed set is empty. Empty sets exist only so that
/// failures can be represented; every algebraic operation rejects them
/// with EmptySetError.
class IntSet {
 public:
  enum class Layout { kDense, kSparse };

  /// Dense layout is preferred while span <= kDenseRatio * size.
  static constexpr std::int64_t kDenseRatio = 64;

  IntSet() = default;
  IntSet(std::initializer_list<std::int64_t> elements);

  /// Sorts and deduplicates; picks the layout automatically.
  static IntSet from_elements(std::vector<std::int64_t> elements);
  static IntSet from_elements(std::vector<std::int64_t> elements,
                              Layout layout);
  /// Runs must be sorted by lo and nonempty; overlapping or adjacent runs
  /// are merged.
  static IntSet from_runs(const std::vector<Run>& runs);
  static IntSet interval(std::int64_t lo, std::int64_t hi);

  static Layout preferred_layout(std::size_t size, std::int64_t span);

  bool empty() const { return size_ == 0; }
  std::size_t size() const { return size_; }
  Layout layout() const { return layout_; }

  std::int64_t min() const;
  std::int64_t max() const;
  /// max - min; 0 for singletons. Throws OverflowError if it does not fit.
  std::int64_t span() const;

  bool contains(std::int64_t value) const;
  bool is_interval() const;

  std::vector<std::int64_t> elements() const;
  std::vector<Run> runs() const;

  /// Copy of this set stored with the requested layout.
  IntSet with_layout(Layout layout) const;

  template <class F>
  void for_each(F&& fn) const {
    if (layout_ == Layout::kSparse) {
      for (std::int64_t v : sparse_) fn(v);
      return;
    }
    for (std::size_t w = 0; w < words_.size(); ++w) {
      std::uint64_t bits = words_[w];
      while (bits != 0) {
        const int bit = std::countr_zero(bits);
        fn(origin_ + static_cast<std::int64_t>(w * 64 + bit));
        bits &= bits - 1;
      }
    }
  }

  /// "{0, 1, 3}"
  std::string to_string() const;

  friend bool operator==(const IntSet& a, const IntSet& b);

  // Raw dense storage, valid only for Layout::kDense. Bit i of the word
  // array stands for origin() + i.
  std::int64_t origin() const { return origin_; }
  const std::vector<std::uint64_t>& words() const { return words_; }

 private:
  static IntSet make_dense(std::int64_t origin,
                           std::vector<std::uint64_t> words);
  static IntSet make_sparse(std::vector<std::int64_t> sorted_unique);

  friend IntSet bits_to_set(std::int64_t origin,
                            std::vector<std::uint64_t> words);

  Layout layout_ = Layout::kSparse;
  std::size_t size_ = 0;
  std::int64_t origin_ = 0;
  std::vector<std::uint64_t> words_;
  std::vector<std::int64_t> sparse_;
};

/// Builds a set from a bitset over [origin, ...]; layout chosen by policy.
IntSet bits_to_set(std::int64_t origin, std::vector<std::uint64_t> words);

/// Parses a comma-separated list of integers such as "0, 1, 3".
/// Sorts and deduplicates. Throws ParseError on anything else.
IntSet parse_set_literal(std::string_view text);
/// "0,1,3"
std::string format_set_literal(const IntSet& set);

IntSet translate(const IntSet& a, std::int64_t x);
IntSet dilate(const IntSet& a, std::int64_t c);
IntSet set_union(const IntSet& a, const IntSet& b);

/// Kernel used by pairwise_sumset. kAuto picks by estimated cost.
enum class SumsetKernel { kAuto, kShiftOr, kRunMerge, kPairwise };

/// {a + b : a in A, b in B}.
IntSet pairwise_sumset(const IntSet& a, const IntSet& b,
                       SumsetKernel kernel = SumsetKernel::kAuto);

}  // namespace approxcover
