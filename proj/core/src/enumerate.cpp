#include "approxcover/enumerate.hpp"

#include <numeric>

namespace approxcover {

bool is_normal_form(const IntSet& a) {
  if (a.empty() || a.min() != 0) return false;
  if (a.size() == 1) return true;
  std::int64_t g = 0;
  a.for_each([&](std::int64_t v) { g = std::gcd(g, v); });
  return g == 1;
}

namespace {

// Appends every k-subset of [1, top - 1] (lexicographic), wrapped as
// {0} + subset + {top}, keeping those with gcd 1.
void emit(std::int64_t top, std::int64_t k, std::vector<std::int64_t>& cur,
          std::int64_t next, std::vector<IntSet>& out) {
  if (static_cast<std::int64_t>(cur.size()) == k) {
    std::int64_t g = top;
    for (std::int64_t v : cur) g = std::gcd(g, v);
    if (g != 1) return;
    std::vector<std::int64_t> elems{0};
    elems.insert(elems.end(), cur.begin(), cur.end());
    elems.push_back(top);
    out.push_back(IntSet::from_elements(std::move(elems)));
    return;
  }
  const std::int64_t remaining = k - static_cast<std::int64_t>(cur.size());
  for (std::int64_t v = next; v + remaining - 1 <= top - 1; ++v) {
    cur.push_back(v);
    emit(top, k, cur, v + 1, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<IntSet> normal_form_sets(std::int64_t max_elem,
                                     std::int64_t max_size) {
  std::vector<IntSet> out;
  for (std::int64_t top = 1; top <= max_elem; ++top) {
    for (std::int64_t size = 2; size <= max_size && size <= top + 1; ++size) {
      std::vector<std::int64_t> cur;
      emit(top, size - 2, cur, 1, out);
    }
  }
  return out;
}

}  // namespace approxcover
