#pragma once

// Brute-force reference implementations used only by tests. They share no
// code with the library: plain std::set arithmetic, sequential folding and
// exhaustive search.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <random>
#include <set>
#include <vector>

namespace oracle {

using Set = std::set<std::int64_t>;

inline Set sumset(const Set& a, const Set& b) {
  Set out;
  for (auto x : a)
    for (auto y : b) out.insert(x + y);
  return out;
}

// hA by adding A one copy at a time.
inline Set hfold(const Set& a, int h) {
  Set acc{0};
  for (int i = 0; i < h; ++i) acc = sumset(acc, a);
  return acc;
}

inline bool is_ap(const Set& a) {
  if (a.size() <= 2) return true;
  auto it = a.begin();
  const auto first = *it++;
  const auto d = *it - first;
  auto prev = *it++;
  for (; it != a.end(); ++it) {
    if (*it - prev != d) return false;
    prev = *it;
  }
  return true;
}

inline bool covers(const Set& a, const Set& target, const std::vector<std::int64_t>& x) {
  for (auto c : target) {
    bool hit = false;
    for (auto off : x) hit = hit || a.count(c - off) > 0;
    if (!hit) return false;
  }
  return true;
}

// Can `target` be covered with at most `slots` translates of A? The
// smallest uncovered element must be hit by some translate c - a.
inline bool coverable(const Set& a, Set target, int slots) {
  if (target.empty()) return true;
  if (slots == 0) return false;
  if (target.size() > static_cast<std::size_t>(slots) * a.size()) return false;
  const auto u = *target.begin();
  for (auto ai : a) {
    const auto x = u - ai;
    Set rest;
    for (auto c : target)
      if (!a.count(c - x)) rest.insert(c);
    if (coverable(a, rest, slots - 1)) return true;
  }
  return false;
}

// Smallest l with rA inside A + X, |X| = l.
inline int covering_number(const Set& a, int r) {
  const Set target = hfold(a, r);
  for (int l = 1;; ++l)
    if (coverable(a, target, l)) return l;
}

// Lexicographically smallest sorted X of size l covering rA, searching all
// l-subsets of the candidate offsets rA - A in lexicographic order.
inline std::optional<std::vector<std::int64_t>> lex_smallest_cover(const Set& a, int r, int l) {
  const Set target = hfold(a, r);
  Set cand_set;
  for (auto c : target)
    for (auto ai : a) cand_set.insert(c - ai);
  const std::vector<std::int64_t> cand(cand_set.begin(), cand_set.end());
  std::vector<std::int64_t> pick;
  std::optional<std::vector<std::int64_t>> found;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    if (found) return;
    if (static_cast<int>(pick.size()) == l) {
      if (covers(a, target, pick)) found = pick;
      return;
    }
    for (std::size_t i = start; i < cand.size() && !found; ++i) {
      pick.push_back(cand[i]);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return found;
}

inline std::int64_t binomial(std::int64_t n, std::int64_t k) {
  std::int64_t out = 1;
  for (std::int64_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
  return out;
}

// Every normal-form set (contains 0, positive elements coprime) with
// 2 <= size <= max_size and max <= max_elem, by filtering all subsets.
inline std::vector<Set> normal_form_sets(int max_elem, int max_size) {
  std::vector<Set> out;
  for (int top = 1; top <= max_elem; ++top) {
    const int inner = top - 1;
    for (std::uint32_t mask = 0; mask < (1U << inner); ++mask) {
      Set s{0, top};
      for (int i = 0; i < inner; ++i)
        if (mask & (1U << i)) s.insert(i + 1);
      if (static_cast<int>(s.size()) > max_size) continue;
      std::int64_t g = 0;
      for (auto v : s) g = std::gcd(g, v);
      if (g == 1) out.push_back(s);
    }
  }
  return out;
}

inline Set random_set(std::mt19937_64& rng, int min_size, int max_size, std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<int> size_dist(min_size, max_size);
  std::uniform_int_distribution<std::int64_t> elem(lo, hi);
  const int target = std::min<std::int64_t>(size_dist(rng), hi - lo + 1);
  Set s;
  while (static_cast<int>(s.size()) < target) s.insert(elem(rng));
  return s;
}

}  // namespace oracle
