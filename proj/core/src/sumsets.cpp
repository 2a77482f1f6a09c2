#include "approxcover/sumsets.hpp"

#include <numeric>
#include <utility>

#include "approxcover/detail/checked.hpp"

namespace approxcover {

using detail::checked_add;
using detail::checked_mul;

IntSet APShape::realize() const {
  if (diff == 1) return IntSet::interval(first, last());
  std::vector<std::int64_t> out;
  out.reserve(static_cast<std::size_t>(size));
  for (std::int64_t i = 0; i < size; ++i) out.push_back(first + i * diff);
  return IntSet::from_elements(std::move(out));
}

namespace {

struct Reduced {
  IntSet base;  // (A - offset) / scale, min 0
  std::int64_t offset = 0;
  std::int64_t scale = 1;
};

Reduced reduce(const IntSet& a) {
  const std::int64_t lo = a.min();
  a.span();  // overflow check
  std::uint64_t g = 0;
  a.for_each([&](std::int64_t v) {
    g = std::gcd(g, static_cast<std::uint64_t>(v - lo));
  });
  if (g <= 1) return {translate(a, -lo), lo, 1};
  std::vector<std::int64_t> out;
  out.reserve(a.size());
  const auto scale = static_cast<std::int64_t>(g);
  a.for_each([&](std::int64_t v) { out.push_back((v - lo) / scale); });
  return {IntSet::from_elements(std::move(out)), lo, scale};
}

// scale * reduced + h * offset
IntSet expand(const IntSet& reduced, std::int64_t h, const Reduced& r) {
  const std::int64_t shift = checked_mul(h, r.offset, "hfold");
  if (r.scale == 1) return translate(reduced, shift);
  if (reduced.is_interval()) {
    return APShape{shift, r.scale, static_cast<std::int64_t>(reduced.size())}
        .realize();
  }
  std::vector<std::int64_t> out;
  out.reserve(reduced.size());
  reduced.for_each(
      [&](std::int64_t v) { out.push_back(v * r.scale + shift); });
  return IntSet::from_elements(std::move(out));
}

void check_fold(const IntSet& a, std::int64_t h, const char* where) {
  if (a.empty()) throw EmptySetError(where);
  if (h < 1) {
    throw InvalidFoldError(std::string(where) + ": h must be >= 1, got " +
                           std::to_string(h));
  }
  checked_mul(h, a.min(), where);
  checked_mul(h, a.max(), where);
}

}  // namespace

IntSet hfold(const IntSet& a, std::int64_t h) {
  check_fold(a, h, "hfold");
  if (h == 1) return a;
  if (a.size() == 1) return IntSet{h * a.min()};

  const Reduced r = reduce(a);
  const std::int64_t top = checked_mul(h, r.base.max(), "hfold");
  const auto full = [&] { return expand(IntSet::interval(0, top), h, r); };

  if (r.base.is_interval()) return full();

  std::optional<IntSet> acc;
  IntSet power = r.base;
  for (std::int64_t k = h; k > 0;) {
    if (k & 1) {
      acc = acc ? pairwise_sumset(*acc, power) : power;
      if (acc->is_interval()) return full();
    }
    k >>= 1;
    if (k > 0) {
      power = pairwise_sumset(power, power);
      if (power.is_interval()) return full();
    }
  }
  return expand(*acc, h, r);
}

std::vector<IntSet> hfold_prefix(const IntSet& a, std::int64_t h_max) {
  check_fold(a, h_max, "hfold_prefix");
  std::vector<IntSet> out;
  out.reserve(static_cast<std::size_t>(h_max));
  if (a.size() == 1) {
    for (std::int64_t h = 1; h <= h_max; ++h) out.push_back(IntSet{h * a.min()});
    return out;
  }
  const Reduced r = reduce(a);
  IntSet cur = r.base;
  for (std::int64_t h = 1; h <= h_max; ++h) {
    if (h > 1) {
      cur = cur.is_interval() ? IntSet::interval(0, h * r.base.max())
                              : pairwise_sumset(cur, r.base);
    }
    out.push_back(expand(cur, h, r));
  }
  return out;
}

std::optional<APShape> detect_ap(const IntSet& a) {
  if (a.empty()) throw EmptySetError("detect_ap");
  const auto n = static_cast<std::int64_t>(a.size());
  if (n == 1) return APShape{a.min(), 1, 1};
  if (a.is_interval()) return APShape{a.min(), 1, n};
  a.span();  // rejects sets whose gaps do not fit in 64 bits

  std::int64_t prev = 0;
  std::int64_t diff = 0;
  std::int64_t idx = 0;
  bool ok = true;
  a.for_each([&](std::int64_t v) {
    if (!ok) return;
    if (idx == 1) diff = v - prev;
    if (idx >= 2 && v - prev != diff) ok = false;
    prev = v;
    ++idx;
  });
  if (!ok) return std::nullopt;
  return APShape{a.min(), diff, n};
}

SizeBound hfold_size_bound(const IntSet& a, std::int64_t h) {
  if (a.empty()) throw EmptySetError("hfold_size_bound");
  if (h < 1) throw InvalidFoldError("hfold_size_bound: h must be >= 1");
  const auto m = static_cast<std::int64_t>(a.size());
  const std::int64_t hm = checked_mul(h, m, "hfold_size_bound");
  if (detect_ap(a)) return {hm - h + 1, true};
  return {hm, false};
}

}  // namespace approxcover
