#include "approxcover/int_set.hpp"

#include <algorithm>
#include <charconv>
#include <utility>

#include "approxcover/detail/checked.hpp"

namespace approxcover {

using detail::checked_add;
using detail::checked_mul;
using detail::checked_sub;

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::kEmptySet:
      return "EmptySet";
    case ErrorCode::kOverflow:
      return "Overflow";
    case ErrorCode::kInvalidFold:
      return "InvalidFold";
    case ErrorCode::kInvalidSize:
      return "InvalidSize";
    case ErrorCode::kBudgetExceeded:
      return "BudgetExceeded";
    case ErrorCode::kNoStabilization:
      return "NoStabilization";
    case ErrorCode::kParse:
      return "ParseError";
  }
  return "Unknown";
}

namespace {

// Dense storage refuses spans that would need more than 2^34 words.
constexpr std::int64_t kMaxDenseSpan = std::int64_t{1} << 40;

std::size_t words_for_span(std::int64_t span) {
  return static_cast<std::size_t>(span / 64 + 1);
}

void set_bit(std::vector<std::uint64_t>& words, std::uint64_t i) {
  words[i / 64] |= std::uint64_t{1} << (i % 64);
}

// Sets bits [lo, hi] (offsets, inclusive).
void set_range(std::vector<std::uint64_t>& words, std::uint64_t lo,
               std::uint64_t hi) {
  std::uint64_t w_lo = lo / 64;
  const std::uint64_t w_hi = hi / 64;
  const std::uint64_t lo_mask = ~std::uint64_t{0} << (lo % 64);
  const std::uint64_t hi_mask = ~std::uint64_t{0} >> (63 - hi % 64);
  if (w_lo == w_hi) {
    words[w_lo] |= lo_mask & hi_mask;
    return;
  }
  words[w_lo] |= lo_mask;
  for (++w_lo; w_lo < w_hi; ++w_lo) words[w_lo] = ~std::uint64_t{0};
  words[w_hi] |= hi_mask;
}

std::int64_t parse_int(std::string_view token, std::string_view whole) {
  std::int64_t value = 0;
  const char* first = token.data();
  const char* last = token.data() + token.size();
  if (!token.empty() && token.front() == '+') ++first;
  auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec == std::errc::result_out_of_range) {
    throw ParseError("integer out of 64-bit range in '" + std::string(whole) +
                     "'");
  }
  if (ec != std::errc() || ptr != last || first == last) {
    throw ParseError("not an integer: '" + std::string(token) + "' in '" +
                     std::string(whole) + "'");
  }
  return value;
}

std::string_view trim(std::string_view s) {
  const auto not_space = [](char c) {
    return c != ' ' && c != '\t' && c != '\n' && c != '\r';
  };
  while (!s.empty() && !not_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && !not_space(s.back())) s.remove_suffix(1);
  return s;
}

}  // namespace

IndexRange parse_index_range(std::string_view text) {
  const std::string_view t = trim(text);
  const auto dots = t.find("..");
  IndexRange out;
  if (dots == std::string_view::npos) {
    out.first = out.last = parse_int(trim(t), text);
  } else {
    out.first = parse_int(trim(t.substr(0, dots)), text);
    out.last = parse_int(trim(t.substr(dots + 2)), text);
  }
  if (out.last < out.first) {
    throw ParseError("empty range '" + std::string(text) + "'");
  }
  return out;
}

std::string format_index_range(const IndexRange& range) {
  return std::to_string(range.first) + ".." + std::to_string(range.last);
}

IntSet::IntSet(std::initializer_list<std::int64_t> elements)
    : IntSet(from_elements(std::vector<std::int64_t>(elements))) {}

IntSet::Layout IntSet::preferred_layout(std::size_t size, std::int64_t span) {
  if (size == 0) return Layout::kSparse;
  const auto n = static_cast<std::int64_t>(size);
  if (n > kMaxDenseSpan / kDenseRatio) return Layout::kDense;
  return span <= kDenseRatio * n ? Layout::kDense : Layout::kSparse;
}

IntSet IntSet::make_sparse(std::vector<std::int64_t> sorted_unique) {
  IntSet s;
  s.layout_ = Layout::kSparse;
  s.size_ = sorted_unique.size();
  s.sparse_ = std::move(sorted_unique);
  return s;
}

IntSet IntSet::make_dense(std::int64_t origin,
                          std::vector<std::uint64_t> words) {
  IntSet s;
  s.layout_ = Layout::kDense;
  s.origin_ = origin;
  std::size_t count = 0;
  for (std::uint64_t w : words) count += std::popcount(w);
  s.size_ = count;
  s.words_ = std::move(words);
  return s;
}

IntSet IntSet::from_elements(std::vector<std::int64_t> elements) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()),
                 elements.end());
  if (elements.empty()) return IntSet();
  std::int64_t span = 0;
  if (__builtin_sub_overflow(elements.back(), elements.front(), &span)) {
    return make_sparse(std::move(elements));
  }
  const Layout layout = preferred_layout(elements.size(), span);
  return from_elements(std::move(elements), layout);
}

IntSet IntSet::from_elements(std::vector<std::int64_t> elements,
                             Layout layout) {
  std::sort(elements.begin(), elements.end());
  elements.erase(std::unique(elements.begin(), elements.end()),
                 elements.end());
  if (elements.empty()) return IntSet();
  if (layout == Layout::kSparse) return make_sparse(std::move(elements));

  const std::int64_t origin = elements.front();
  const std::int64_t span = checked_sub(elements.back(), origin, "IntSet");
  if (span >= kMaxDenseSpan) {
    throw InvalidSizeError("IntSet: span too large for dense layout");
  }
  std::vector<std::uint64_t> words(words_for_span(span), 0);
  for (std::int64_t v : elements) {
    set_bit(words, static_cast<std::uint64_t>(v - origin));
  }
  return make_dense(origin, std::move(words));
}

IntSet IntSet::from_runs(const std::vector<Run>& runs) {
  if (runs.empty()) return IntSet();
  std::vector<Run> merged;
  merged.reserve(runs.size());
  for (const Run& r : runs) {
    if (!merged.empty() && r.lo <= merged.back().hi + 1) {
      merged.back().hi = std::max(merged.back().hi, r.hi);
    } else {
      merged.push_back(r);
    }
  }
  const std::int64_t origin = merged.front().lo;
  const std::int64_t span = checked_sub(merged.back().hi, origin, "IntSet");
  std::int64_t count = 0;
  for (const Run& r : merged) count += r.length();

  if (preferred_layout(static_cast<std::size_t>(count), span) ==
      Layout::kSparse) {
    std::vector<std::int64_t> out;
    out.reserve(static_cast<std::size_t>(count));
    for (const Run& r : merged) {
      for (std::int64_t v = r.lo;; ++v) {
        out.push_back(v);
        if (v == r.hi) break;
      }
    }
    return make_sparse(std::move(out));
  }
  std::vector<std::uint64_t> words(words_for_span(span), 0);
  for (const Run& r : merged) {
    set_range(words, static_cast<std::uint64_t>(r.lo - origin),
              static_cast<std::uint64_t>(r.hi - origin));
  }
  return make_dense(origin, std::move(words));
}

IntSet IntSet::interval(std::int64_t lo, std::int64_t hi) {
  if (hi < lo) return IntSet();
  return from_runs({Run{lo, hi}});
}

IntSet bits_to_set(std::int64_t origin, std::vector<std::uint64_t> words) {
  std::size_t first_word = 0;
  while (first_word < words.size() && words[first_word] == 0) ++first_word;
  if (first_word == words.size()) return IntSet();
  std::size_t last_word = words.size() - 1;
  while (words[last_word] == 0) --last_word;

  std::size_t count = 0;
  for (std::size_t w = first_word; w <= last_word; ++w) {
    count += std::popcount(words[w]);
  }
  const std::uint64_t lo_off =
      first_word * 64 + std::countr_zero(words[first_word]);
  const std::uint64_t hi_off =
      last_word * 64 + 63 - std::countl_zero(words[last_word]);
  const std::int64_t lo =
      checked_add(origin, static_cast<std::int64_t>(lo_off), "IntSet");
  checked_add(origin, static_cast<std::int64_t>(hi_off), "IntSet");
  const std::int64_t span = static_cast<std::int64_t>(hi_off - lo_off);

  if (IntSet::preferred_layout(count, span) == IntSet::Layout::kSparse) {
    std::vector<std::int64_t> out;
    out.reserve(count);
    for (std::size_t w = first_word; w <= last_word; ++w) {
      std::uint64_t bits = words[w];
      while (bits != 0) {
        out.push_back(origin +
                      static_cast<std::int64_t>(w * 64 + std::countr_zero(bits)));
        bits &= bits - 1;
      }
    }
    return IntSet::make_sparse(std::move(out));
  }

  // Re-base so that bit 0 is the minimum.
  const std::size_t word_shift = lo_off / 64;
  const unsigned bit_shift = lo_off % 64;
  std::vector<std::uint64_t> packed(words_for_span(span), 0);
  for (std::size_t i = 0; i < packed.size(); ++i) {
    const std::size_t src = i + word_shift;
    std::uint64_t v = src < words.size() ? words[src] >> bit_shift : 0;
    if (bit_shift != 0 && src + 1 < words.size()) {
      v |= words[src + 1] << (64 - bit_shift);
    }
    packed[i] = v;
  }
  return IntSet::make_dense(lo, std::move(packed));
}

std::int64_t IntSet::min() const {
  if (empty()) throw EmptySetError("IntSet::min");
  return layout_ == Layout::kSparse ? sparse_.front() : origin_;
}

std::int64_t IntSet::max() const {
  if (empty()) throw EmptySetError("IntSet::max");
  if (layout_ == Layout::kSparse) return sparse_.back();
  std::size_t w = words_.size() - 1;
  while (words_[w] == 0) --w;
  return origin_ +
         static_cast<std::int64_t>(w * 64 + 63 - std::countl_zero(words_[w]));
}

std::int64_t IntSet::span() const {
  return checked_sub(max(), min(), "IntSet::span");
}

bool IntSet::contains(std::int64_t value) const {
  if (empty()) return false;
  if (layout_ == Layout::kSparse) {
    return std::binary_search(sparse_.begin(), sparse_.end(), value);
  }
  if (value < origin_) return false;
  std::uint64_t off = 0;
  if (__builtin_sub_overflow(value, origin_, &off)) return false;
  if (off / 64 >= words_.size()) return false;
  return (words_[off / 64] >> (off % 64)) & 1U;
}

bool IntSet::is_interval() const {
  if (empty()) return false;
  std::int64_t s = 0;
  if (__builtin_sub_overflow(max(), min(), &s)) return false;
  return static_cast<std::uint64_t>(s) + 1 == size_;
}

std::vector<std::int64_t> IntSet::elements() const {
  if (layout_ == Layout::kSparse) return sparse_;
  std::vector<std::int64_t> out;
  out.reserve(size_);
  for_each([&](std::int64_t v) { out.push_back(v); });
  return out;
}

std::vector<Run> IntSet::runs() const {
  std::vector<Run> out;
  if (layout_ == Layout::kSparse) {
    for (std::int64_t v : sparse_) {
      if (!out.empty() && out.back().hi + 1 == v) {
        out.back().hi = v;
      } else {
        out.push_back(Run{v, v});
      }
    }
    return out;
  }
  // Walk word-wise, jumping over whole runs of ones and zeros.
  const std::uint64_t total = words_.size() * 64;
  std::uint64_t pos = 0;
  while (pos < total) {
    // Skip zeros.
    while (pos < total) {
      const std::uint64_t w = words_[pos / 64] >> (pos % 64);
      if (w == 0) {
        pos = (pos / 64 + 1) * 64;
        continue;
      }
      pos += std::countr_zero(w);
      break;
    }
    if (pos >= total) break;
    const std::uint64_t start = pos;
    while (pos < total) {
      const std::uint64_t w = ~(words_[pos / 64] >> (pos % 64));
      const unsigned avail = 64 - pos % 64;
      const unsigned ones = std::min<unsigned>(std::countr_zero(w), avail);
      pos += ones;
      if (ones < avail) break;
    }
    out.push_back(Run{origin_ + static_cast<std::int64_t>(start),
                      origin_ + static_cast<std::int64_t>(pos - 1)});
  }
  return out;
}

IntSet IntSet::with_layout(Layout layout) const {
  if (layout == layout_ || empty()) return *this;
  return from_elements(elements(), layout);
}

std::string IntSet::to_string() const {
  std::string out = "{";
  bool first = true;
  for_each([&](std::int64_t v) {
    if (!first) out += ", ";
    out += std::to_string(v);
    first = false;
  });
  out += "}";
  return out;
}

bool operator==(const IntSet& a, const IntSet& b) {
  if (a.size_ != b.size_) return false;
  if (a.empty()) return true;
  if (a.layout_ == IntSet::Layout::kDense &&
      b.layout_ == IntSet::Layout::kDense) {
    return a.origin_ == b.origin_ && a.words_ == b.words_;
  }
  if (a.layout_ == IntSet::Layout::kSparse &&
      b.layout_ == IntSet::Layout::kSparse) {
    return a.sparse_ == b.sparse_;
  }
  return a.elements() == b.elements();
}

IntSet parse_set_literal(std::string_view text) {
  std::vector<std::int64_t> values;
  std::string_view rest = text;
  if (trim(rest).empty()) throw ParseError("empty set literal");
  while (true) {
    const auto comma = rest.find(',');
    const std::string_view token = trim(rest.substr(0, comma));
    if (token.empty()) {
      throw ParseError("empty element in set literal '" + std::string(text) +
                       "'");
    }
    values.push_back(parse_int(token, text));
    if (comma == std::string_view::npos) break;
    rest.remove_prefix(comma + 1);
  }
  return IntSet::from_elements(std::move(values));
}

std::string format_set_literal(const IntSet& set) {
  std::string out;
  set.for_each([&](std::int64_t v) {
    if (!out.empty()) out += ',';
    out += std::to_string(v);
  });
  return out;
}

IntSet translate(const IntSet& a, std::int64_t x) {
  if (a.empty()) throw EmptySetError("translate");
  checked_add(a.min(), x, "translate");
  checked_add(a.max(), x, "translate");
  if (a.layout() == IntSet::Layout::kDense) {
    return bits_to_set(a.origin() + x, a.words());
  }
  std::vector<std::int64_t> out = a.elements();
  for (auto& v : out) v += x;
  return IntSet::from_elements(std::move(out), IntSet::Layout::kSparse);
}

IntSet dilate(const IntSet& a, std::int64_t c) {
  if (a.empty()) throw EmptySetError("dilate");
  if (c == 0) return IntSet{0};
  if (c == 1) return a;
  std::vector<std::int64_t> out = a.elements();
  for (auto& v : out) v = checked_mul(v, c, "dilate");
  return IntSet::from_elements(std::move(out));
}

IntSet set_union(const IntSet& a, const IntSet& b) {
  if (a.empty() || b.empty()) throw EmptySetError("set_union");
  const auto ea = a.elements();
  const auto eb = b.elements();
  std::vector<std::int64_t> out;
  out.reserve(ea.size() + eb.size());
  std::set_union(ea.begin(), ea.end(), eb.begin(), eb.end(),
                 std::back_inserter(out));
  return IntSet::from_elements(std::move(out));
}

namespace {

IntSet sumset_pairwise(const IntSet& a, const IntSet& b) {
  const auto ea = a.elements();
  const auto eb = b.elements();
  std::vector<std::int64_t> out;
  out.reserve(ea.size() * eb.size());
  for (std::int64_t x : ea) {
    for (std::int64_t y : eb) out.push_back(x + y);
  }
  return IntSet::from_elements(std::move(out));
}

IntSet sumset_run_merge(const IntSet& a, const IntSet& b) {
  const auto ra = a.runs();
  const auto rb = b.runs();
  std::vector<Run> pieces;
  pieces.reserve(ra.size() * rb.size());
  for (const Run& x : ra) {
    for (const Run& y : rb) pieces.push_back(Run{x.lo + y.lo, x.hi + y.hi});
  }
  std::sort(pieces.begin(), pieces.end(),
            [](const Run& l, const Run& r) { return l.lo < r.lo; });
  return IntSet::from_runs(pieces);
}

// OR the bitset `src` shifted left by `shift` bits into `dst`.
void or_shifted(std::vector<std::uint64_t>& dst,
                const std::vector<std::uint64_t>& src, std::uint64_t shift) {
  const std::size_t ws = shift / 64;
  const unsigned bs = shift % 64;
  if (bs == 0) {
    for (std::size_t i = 0; i < src.size(); ++i) dst[i + ws] |= src[i];
    return;
  }
  for (std::size_t i = 0; i < src.size(); ++i) {
    const std::uint64_t v = src[i];
    dst[i + ws] |= v << bs;
    if (i + ws + 1 < dst.size()) dst[i + ws + 1] |= v >> (64 - bs);
  }
}

IntSet sumset_shift_or(const IntSet& a, const IntSet& b) {
  // Iterate over the operand with fewer elements; shift the other.
  const IntSet& outer = a.size() <= b.size() ? a : b;
  const IntSet& inner_src = a.size() <= b.size() ? b : a;
  const IntSet inner = inner_src.with_layout(IntSet::Layout::kDense);
  const std::int64_t origin = outer.min() + inner.min();
  const std::int64_t span = checked_add(outer.span(), inner.span(), "sumset");
  if (span >= (std::int64_t{1} << 40)) {
    throw InvalidSizeError("sumset: span too large for shift-or kernel");
  }
  std::vector<std::uint64_t> acc(words_for_span(span) + 1, 0);
  const std::int64_t base = outer.min();
  outer.for_each([&](std::int64_t v) {
    or_shifted(acc, inner.words(), static_cast<std::uint64_t>(v - base));
  });
  return bits_to_set(origin, std::move(acc));
}

// Number of maximal runs, without materializing them.
std::size_t run_count(const IntSet& s) {
  if (s.layout() == IntSet::Layout::kSparse) {
    std::size_t runs = 0;
    std::int64_t prev = 0;
    bool first = true;
    s.for_each([&](std::int64_t v) {
      runs += first || v != prev + 1;
      prev = v;
      first = false;
    });
    return runs;
  }
  std::size_t runs = 0;
  std::uint64_t carry = 0;
  for (const std::uint64_t w : s.words()) {
    runs += static_cast<std::size_t>(std::popcount(w & ~((w << 1) | carry)));
    carry = w >> 63;
  }
  return runs;
}

}  // namespace

IntSet pairwise_sumset(const IntSet& a, const IntSet& b,
                       SumsetKernel kernel) {
  if (a.empty() || b.empty()) throw EmptySetError("pairwise_sumset");
  checked_add(a.min(), b.min(), "pairwise_sumset");
  checked_add(a.max(), b.max(), "pairwise_sumset");

  if (kernel == SumsetKernel::kAuto) {
    // Rough operation counts for each kernel; pick the cheapest.
    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double span = static_cast<double>(a.span()) + b.span();
    const double pairwise = na * nb * 4.0;
    const double shift_or =
        std::min(na, nb) * (std::max(a.span(), b.span()) / 64.0 + 2.0) +
        span / 16.0;
    double run_merge = pairwise;
    if (a.layout() == IntSet::Layout::kDense ||
        b.layout() == IntSet::Layout::kDense) {
      const double runs =
          static_cast<double>(run_count(a)) * static_cast<double>(run_count(b));
      run_merge = runs * 6.0 + span / 16.0;
    }
    if (run_merge <= shift_or && run_merge <= pairwise) {
      kernel = SumsetKernel::kRunMerge;
    } else if (shift_or <= pairwise) {
      kernel = SumsetKernel::kShiftOr;
    } else {
      kernel = SumsetKernel::kPairwise;
    }
  }

  switch (kernel) {
    case SumsetKernel::kShiftOr:
      return sumset_shift_or(a, b);
    case SumsetKernel::kRunMerge:
      return sumset_run_merge(a, b);
    case SumsetKernel::kPairwise:
    case SumsetKernel::kAuto:
      break;
  }
  return sumset_pairwise(a, b);
}

}  // namespace approxcover
