#pragma once

#include <cstdint>
#include <vector>

#include "approxcover/int_set.hpp"

namespace approxcover {

/// True iff min A = 0 and the positive elements have gcd 1 ({0} counts).
bool is_normal_form(const IntSet& a);

/// Every normal-form set with 2 <= |A| <= max_size and max A <= max_elem,
/// ordered by (max element, size, lexicographic elements).
std::vector<IntSet> normal_form_sets(std::int64_t max_elem,
                                     std::int64_t max_size);

}  // namespace approxcover
