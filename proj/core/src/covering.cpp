#include "approxcover/covering.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <utility>

#include "approxcover/detail/checked.hpp"
#include "approxcover/sumsets.hpp"

namespace approxcover {

using detail::ceil_div;
using detail::checked_mul;

namespace {

void check_r(std::int64_t r, const char* where) {
  if (r < 1) {
    throw InvalidFoldError(std::string(where) + ": r must be >= 1, got " +
                           std::to_string(r));
  }
}

// Value -> position in a sorted vector; direct table when the values are
// dense enough, binary search otherwise.
class IndexLookup {
 public:
  explicit IndexLookup(std::vector<std::int64_t> values)
      : values_(std::move(values)) {
    if (values_.empty()) return;
    origin_ = values_.front();
    const std::int64_t span = values_.back() - origin_;
    if (span <= 8 * static_cast<std::int64_t>(values_.size()) + 1024) {
      table_.assign(static_cast<std::size_t>(span) + 1, -1);
      for (std::size_t i = 0; i < values_.size(); ++i) {
        table_[static_cast<std::size_t>(values_[i] - origin_)] =
            static_cast<std::int32_t>(i);
      }
    }
  }

  std::int32_t find(std::int64_t v) const {
    if (values_.empty() || v < values_.front() || v > values_.back()) {
      return -1;
    }
    if (!table_.empty()) return table_[static_cast<std::size_t>(v - origin_)];
    auto it = std::lower_bound(values_.begin(), values_.end(), v);
    if (it == values_.end() || *it != v) return -1;
    return static_cast<std::int32_t>(it - values_.begin());
  }

  // First position with value >= v.
  std::size_t lower(std::int64_t v) const {
    return static_cast<std::size_t>(
        std::lower_bound(values_.begin(), values_.end(), v) - values_.begin());
  }

  const std::vector<std::int64_t>& values() const { return values_; }

 private:
  std::vector<std::int64_t> values_;
  std::int64_t origin_ = 0;
  std::vector<std::int32_t> table_;
};

class CoverSolver {
 public:
  CoverSolver(const CoverInstance& inst, const SolverOptions& opts)
      : budget_(opts.node_budget),
        base_(inst.base.elements()),
        universe_(inst.universe.elements()),
        cand_(inst.candidates) {
    n_ = universe_.values().size();
    words_ = n_ / 64 + 1;
    k_ = cand_.values().size();
    m_ = static_cast<std::int64_t>(base_.size());

    cov_.assign(k_ * words_, 0);
    cand_elems_.assign(k_, {});
    for (std::size_t c = 0; c < k_; ++c) {
      const std::int64_t x = cand_.values()[c];
      for (std::int64_t a : base_) {
        const std::int32_t idx = universe_.find(x + a);
        if (idx >= 0) {
          cov_[c * words_ + static_cast<std::size_t>(idx) / 64] |=
              std::uint64_t{1} << (idx % 64);
          cand_elems_[c].push_back(static_cast<std::size_t>(idx));
        }
      }
    }
    elem_cands_.assign(n_, {});
    for (std::size_t e = 0; e < n_; ++e) {
      for (std::int64_t a : base_) {
        const std::int32_t c = cand_.find(universe_.values()[e] - a);
        if (c >= 0) elem_cands_[e].push_back(static_cast<std::size_t>(c));
      }
    }
    count_.assign(n_, 0);
    for (const auto& elems : cand_elems_) {
      for (std::size_t e : elems) ++count_[e];
    }
    excluded_.assign(k_, 0);
    gains_.assign(k_, 0);
    used_.assign(k_, 0);
  }

  std::uint64_t nodes() const { return nodes_; }

  std::vector<std::uint64_t> full_mask() const {
    std::vector<std::uint64_t> mask(words_, ~std::uint64_t{0});
    const std::size_t tail = n_ % 64;
    mask[words_ - 1] = tail == 0 ? 0 : (std::uint64_t{1} << tail) - 1;
    return mask;
  }

  // Branch and bound for a cover strictly smaller than `incumbent`.
  // Returns the best cover found (candidate indices), or empty if none.
  std::vector<std::size_t> improve(std::size_t incumbent,
                                   std::int64_t floor) {
    best_.clear();
    ub_ = incumbent;
    floor_ = floor;
    levels_.assign(incumbent + 1, std::vector<std::uint64_t>(words_));
    levels_[0] = full_mask();
    chosen_.clear();
    branch(0, n_);
    return best_;
  }

  // Lexicographically smallest cover of exactly `size` candidates.
  //
  // Two walks in offset order: a plain one, cheap per node but prone to
  // thrash on sparse instances, and one gating every pick with a
  // branch-and-bound completability check. They alternate under a node cap
  // that grows fourfold per round, so the faster one wins within a
  // constant factor.
  std::vector<std::size_t> lex_smallest(std::size_t size) {
    target_ = size;
    levels_.assign(size + 1, std::vector<std::uint64_t>(words_));
    levels_[0] = full_mask();
    for (std::uint64_t cap = kFirstLexWork;; cap *= 4) {
      for (const bool gated : {false, true}) {
        chosen_.clear();
        phase_cap_ = work_ + cap;
        try {
          const bool found = gated ? lex(0, n_, 0) : lex_plain(0, n_, 0);
          phase_cap_ = 0;
          if (!found) chosen_.clear();
          return chosen_;
        } catch (const PhaseCapped&) {
          reset_exclusions();
        }
      }
    }
  }

  std::vector<std::size_t> greedy() const {
    std::vector<std::uint64_t> uncov = full_mask();
    std::size_t left = n_;
    std::vector<std::size_t> picked;
    while (left > 0) {
      std::size_t best = 0;
      std::size_t best_gain = 0;
      for (std::size_t c = 0; c < k_; ++c) {
        const std::size_t g = gain(c, uncov);
        if (g > best_gain) {
          best_gain = g;
          best = c;
        }
      }
      apply(best, uncov);
      left -= best_gain;
      picked.push_back(best);
    }
    return picked;
  }

  std::int64_t value(std::size_t c) const { return cand_.values()[c]; }

 private:
  const std::uint64_t* cov(std::size_t c) const {
    return cov_.data() + c * words_;
  }

  std::size_t gain(std::size_t c, const std::vector<std::uint64_t>& uncov) const {
    work_ += words_;
    const std::uint64_t* row = cov(c);
    std::size_t g = 0;
    for (std::size_t w = 0; w < words_; ++w) g += std::popcount(row[w] & uncov[w]);
    return g;
  }

  void apply(std::size_t c, std::vector<std::uint64_t>& uncov) const {
    const std::uint64_t* row = cov(c);
    for (std::size_t w = 0; w < words_; ++w) uncov[w] &= ~row[w];
  }

  void tick() {
    if (++nodes_ > budget_) throw BudgetExceededError(nodes_, budget_);
    work_ += 100 + words_;
    if (phase_cap_ != 0 && work_ > phase_cap_) throw PhaseCapped{};
  }

  void set_excluded(std::size_t c, bool on) {
    excluded_[c] = on ? 1 : 0;
    const std::int32_t delta = on ? -1 : 1;
    for (std::size_t e : cand_elems_[c]) count_[e] += delta;
    work_ += cand_elems_[c].size();
  }

  // Lower bound on the translates still needed to cover `left` elements,
  // over candidates c with usable(c): ceil(left / max gain), raised when
  // that does not already reach `cutoff` by the larger of the fractional
  // bound sum 1 / maxgain(e) and the number of uncovered elements no two of
  // which share a candidate. The second bound costs |uncovered| * m, so it
  // runs only when affordable and while it keeps paying off. SIZE_MAX when
  // some element cannot be covered.
  template <class Usable>
  std::size_t remaining_bound(const std::vector<std::uint64_t>& uncov, std::size_t left,
                              std::size_t cutoff, Usable usable) {
    const auto m = static_cast<std::size_t>(m_);
    std::size_t max_gain = 0;
    for (std::size_t c = 0; c < k_ && max_gain < m; ++c) {
      if (usable(c)) max_gain = std::max(max_gain, gain(c, uncov));
    }
    if (max_gain == 0) return SIZE_MAX;
    const std::size_t cheap = (left + max_gain - 1) / max_gain;
    if (cheap >= cutoff || left * m > 4 * k_ * words_) return cheap;
    if (strong_tries_ >= 1000 && strong_hits_ * 50 < strong_tries_) return cheap;

    ++strong_tries_;
    for (std::size_t c = 0; c < k_; ++c) gains_[c] = usable(c) ? gain(c, uncov) : 0;
    double frac = 0;
    std::size_t packing = 0;
    std::fill(used_.begin(), used_.end(), 0);
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = uncov[w];
      while (bits != 0) {
        const std::size_t e = w * 64 + std::countr_zero(bits);
        bits &= bits - 1;
        std::size_t best = 0;
        bool fresh = true;
        work_ += elem_cands_[e].size();
        for (std::size_t c : elem_cands_[e]) {
          best = std::max(best, gains_[c]);
          if (used_[c]) fresh = false;
        }
        if (best == 0) {
          ++strong_hits_;
          return SIZE_MAX;
        }
        frac += 1.0 / static_cast<double>(best);
        if (fresh) {
          ++packing;
          for (std::size_t c : elem_cands_[e]) used_[c] = 1;
        }
      }
    }
    const auto fractional = static_cast<std::size_t>(std::ceil(frac - 1e-9));
    const std::size_t out = std::max({cheap, fractional, packing});
    if (out >= cutoff) ++strong_hits_;
    return out;
  }

  std::size_t first_uncovered(const std::vector<std::uint64_t>& uncov) const {
    for (std::size_t w = 0; w < words_; ++w) {
      if (uncov[w] != 0) return w * 64 + std::countr_zero(uncov[w]);
    }
    return n_;
  }

  void branch(std::size_t depth, std::size_t left) {
    tick();
    if (left == 0) {
      best_ = chosen_;
      ub_ = depth;
      return;
    }
    // Any completion needs at least ceil(left / m) more translates.
    const std::size_t need =
        static_cast<std::size_t>(ceil_div(static_cast<std::int64_t>(left), m_));
    if (depth + need >= ub_) return;
    if (static_cast<std::int64_t>(ub_) <= floor_) return;

    const std::vector<std::uint64_t>& uncov = levels_[depth];

    // Most constrained uncovered element.
    std::size_t pick = n_;
    std::int32_t pick_count = 0;
    for (std::size_t w = 0; w < words_; ++w) {
      std::uint64_t bits = uncov[w];
      while (bits != 0) {
        const std::size_t e = w * 64 + std::countr_zero(bits);
        bits &= bits - 1;
        if (pick == n_ || count_[e] < pick_count) {
          pick = e;
          pick_count = count_[e];
        }
      }
    }
    if (pick_count == 0) return;

    const std::size_t need_more = remaining_bound(
        uncov, left, ub_ - depth, [&](std::size_t c) { return !excluded_[c]; });
    if (need_more == SIZE_MAX || depth + need_more >= ub_) return;

    std::vector<std::pair<std::size_t, std::size_t>> options;  // gain, cand
    const std::int64_t target = universe_.values()[pick];
    for (std::int64_t a : base_) {
      const std::int32_t c = cand_.find(target - a);
      if (c < 0 || excluded_[static_cast<std::size_t>(c)]) continue;
      options.emplace_back(gain(static_cast<std::size_t>(c), uncov),
                           static_cast<std::size_t>(c));
    }
    std::sort(options.begin(), options.end(), [](const auto& l, const auto& r) {
      return l.first != r.first ? l.first > r.first : l.second < r.second;
    });

    std::vector<std::size_t> banned;
    for (const auto& [g, c] : options) {
      if (depth + 1 >= ub_) break;
      const std::size_t rest =
          (left - g + static_cast<std::size_t>(m_) - 1) /
          static_cast<std::size_t>(m_);
      if (depth + 1 + rest < ub_) {
        levels_[depth + 1] = levels_[depth];
        apply(c, levels_[depth + 1]);
        chosen_.push_back(c);
        branch(depth + 1, left - g);
        chosen_.pop_back();
      }
      // Covers containing c were all explored in this subtree.
      set_excluded(c, true);
      banned.push_back(c);
    }
    for (std::size_t c : banned) set_excluded(c, false);
  }

  struct PhaseCapped {};
  // In work units: words popcounted plus elements touched.
  static constexpr std::uint64_t kFirstLexWork = 4'000'000;

  void reset_exclusions() {
    std::fill(excluded_.begin(), excluded_.end(), 0);
    std::fill(count_.begin(), count_.end(), 0);
    for (const auto& elems : cand_elems_) {
      for (std::size_t e : elems) ++count_[e];
    }
  }

  bool lex_plain(std::size_t depth, std::size_t left, std::size_t start) {
    tick();
    if (left == 0) return depth == target_;
    if (depth == target_) return false;
    const std::size_t slots = target_ - depth;
    if (left > slots * static_cast<std::size_t>(m_)) return false;

    const std::vector<std::uint64_t>& uncov = levels_[depth];
    const std::int64_t u_min = universe_.values()[first_uncovered(uncov)];
    const std::int64_t hi = u_min - base_.front();
    std::size_t c = std::max(start, cand_.lower(u_min - base_.back()));
    for (; c < k_ && cand_.values()[c] <= hi; ++c) {
      const std::size_t g = gain(c, uncov);
      if (g == 0) continue;
      if (left - g > (slots - 1) * static_cast<std::size_t>(m_)) continue;
      levels_[depth + 1] = levels_[depth];
      apply(c, levels_[depth + 1]);
      chosen_.push_back(c);
      if (lex_plain(depth + 1, left - g, c + 1)) return true;
      chosen_.pop_back();
    }
    return false;
  }

  // Can `left` uncovered elements at `depth` be finished within target_
  // using only candidates >= start? Runs branch() with everything below
  // start excluded, stopping at the first cover.
  bool completable(std::size_t depth, std::size_t left, std::size_t start) {
    if (left == 0) return true;
    // Candidates with nothing left to cover cannot matter below here.
    const std::vector<std::uint64_t>& uncov = levels_[depth];
    std::vector<std::size_t> hidden;
    for (std::size_t c = 0; c < start; ++c) {
      if (!excluded_[c] && gain(c, uncov) > 0) {
        set_excluded(c, true);
        hidden.push_back(c);
      }
    }
    ub_ = target_ + 1;
    floor_ = static_cast<std::int64_t>(target_);
    branch(depth, left);
    for (std::size_t c : hidden) set_excluded(c, false);
    return ub_ <= target_;
  }

  // Picks offsets in increasing order; each pick is kept only if the rest
  // can still be completed, so the walk never backtracks past a pick.
  bool lex(std::size_t depth, std::size_t left, std::size_t start) {
    tick();
    if (left == 0) return depth == target_;
    if (depth == target_) return false;
    const std::size_t slots = target_ - depth;

    const std::vector<std::uint64_t>& uncov = levels_[depth];
    const std::int64_t u_min = universe_.values()[first_uncovered(uncov)];
    // The smallest uncovered element needs some later offset <= u_min - min A;
    // offsets below u_min - max A only reach covered elements.
    const std::int64_t hi = u_min - base_.front();
    std::size_t c = std::max(start, cand_.lower(u_min - base_.back()));

    for (; c < k_ && cand_.values()[c] <= hi; ++c) {
      const std::size_t g = gain(c, uncov);
      if (g == 0) continue;
      if (left - g > (slots - 1) * static_cast<std::size_t>(m_)) continue;
      levels_[depth + 1] = levels_[depth];
      apply(c, levels_[depth + 1]);
      chosen_.push_back(c);
      if (completable(depth + 1, left - g, c + 1) && lex(depth + 1, left - g, c + 1)) {
        return true;
      }
      chosen_.pop_back();
    }
    return false;
  }

  std::uint64_t budget_;
  std::uint64_t nodes_ = 0;
  std::vector<std::int64_t> base_;
  IndexLookup universe_;
  IndexLookup cand_;
  std::size_t n_ = 0;
  std::size_t words_ = 1;
  std::size_t k_ = 0;
  std::int64_t m_ = 1;

  std::vector<std::uint64_t> cov_;
  std::vector<std::int32_t> count_;
  std::vector<char> excluded_;
  std::vector<std::vector<std::size_t>> elem_cands_;
  std::vector<std::vector<std::size_t>> cand_elems_;
  std::vector<std::size_t> gains_;
  std::vector<char> used_;

  std::vector<std::vector<std::uint64_t>> levels_;
  std::vector<std::size_t> chosen_;
  std::vector<std::size_t> best_;
  std::size_t ub_ = 0;
  std::int64_t floor_ = 0;
  std::size_t target_ = 0;
  std::uint64_t phase_cap_ = 0;
  mutable std::uint64_t work_ = 0;
  std::uint64_t strong_tries_ = 0;
  std::uint64_t strong_hits_ = 0;
};

IntSet to_offsets(const CoverSolver& solver,
                  const std::vector<std::size_t>& picked) {
  std::vector<std::int64_t> out;
  out.reserve(picked.size());
  for (std::size_t c : picked) out.push_back(solver.value(c));
  return IntSet::from_elements(std::move(out));
}

}  // namespace

CoverInstance CoverInstance::build(const IntSet& base, std::int64_t r) {
  if (base.empty()) throw EmptySetError("CoverInstance");
  check_r(r, "CoverInstance");
  CoverInstance inst;
  inst.base = base;
  inst.r = r;
  inst.universe = hfold(base, r);
  inst.candidates =
      pairwise_sumset(inst.universe, dilate(base, -1)).elements();
  return inst;
}

IntSet greedy_cover(const CoverInstance& instance) {
  CoverSolver solver(instance, SolverOptions{});
  return to_offsets(solver, solver.greedy());
}

CoverResult solve_cover(const CoverInstance& inst,
                        const SolverOptions& options) {
  const IntSet& a = inst.base;
  if (a.empty()) throw EmptySetError("solve_cover");
  check_r(inst.r, "solve_cover");
  if (inst.r == 1 || a.size() == 1) {
    const std::int64_t x = checked_mul(inst.r - 1, a.min(), "solve_cover");
    return CoverResult{1, IntSet{x}, 0, true};
  }

  CoverSolver solver(inst, options);
  const auto m = static_cast<std::int64_t>(a.size());
  const std::int64_t floor =
      std::max(lower_bound(a, inst.r),
               ceil_div(static_cast<std::int64_t>(inst.universe.size()), m));

  std::vector<std::size_t> best = solver.greedy();
  if (static_cast<std::int64_t>(best.size()) > floor) {
    std::vector<std::size_t> better = solver.improve(best.size(), floor);
    if (!better.empty()) best = std::move(better);
  }
  const std::vector<std::size_t> lex = solver.lex_smallest(best.size());
  CoverResult out;
  out.covering_number = static_cast<std::int64_t>(best.size());
  out.witness = to_offsets(solver, lex.empty() ? best : lex);
  out.nodes_explored = solver.nodes();
  out.optimal = true;
  return out;
}

CoverResult covering_number(const IntSet& a, std::int64_t r,
                            const SolverOptions& options) {
  if (a.empty()) throw EmptySetError("covering_number");
  check_r(r, "covering_number");
  if (r == 1 || a.size() == 1) {
    const std::int64_t x = checked_mul(r - 1, a.min(), "covering_number");
    return CoverResult{1, IntSet{x}, 0, true};
  }
  return solve_cover(CoverInstance::build(a, r), options);
}

std::optional<IntSet> find_cover(const IntSet& a, std::int64_t r,
                                 std::int64_t max_translates,
                                 const SolverOptions& options) {
  if (a.empty()) throw EmptySetError("find_cover");
  check_r(r, "find_cover");
  if (max_translates < 1) return std::nullopt;
  if (r == 1 || a.size() == 1) {
    return IntSet{checked_mul(r - 1, a.min(), "find_cover")};
  }
  CoverSolver solver(CoverInstance::build(a, r), options);
  // improve() stops at the first cover once the incumbent reaches the floor.
  const auto limit = static_cast<std::size_t>(max_translates);
  const std::vector<std::size_t> found = solver.improve(limit + 1, max_translates);
  if (found.empty()) return std::nullopt;
  return to_offsets(solver, found);
}

bool is_approximate_group(const IntSet& a, std::int64_t r, const IntSet& x) {
  if (a.empty() || x.empty()) throw EmptySetError("is_approximate_group");
  check_r(r, "is_approximate_group");
  const IntSet target = hfold(a, r);
  const std::vector<std::int64_t> offsets = x.elements();
  bool ok = true;
  target.for_each([&](std::int64_t c) {
    if (!ok) return;
    ok = std::any_of(offsets.begin(), offsets.end(),
                     [&](std::int64_t off) { return a.contains(c - off); });
  });
  return ok;
}

std::int64_t lower_bound(const IntSet& a, std::int64_t r) {
  if (a.empty()) throw EmptySetError("lower_bound");
  check_r(r, "lower_bound");
  const auto m = static_cast<std::int64_t>(a.size());
  if (m == 1) return 1;
  const std::int64_t rm = checked_mul(r, m, "lower_bound");
  const std::int64_t counting = ceil_div(rm - r + 1, m);
  if (detect_ap(a)) return counting;
  return std::max(r, counting);
}

std::int64_t ap_covering_number(std::int64_t m, std::int64_t r) {
  if (m < 2) {
    throw InvalidSizeError("ap_covering_number: m must be >= 2, got " +
                           std::to_string(m));
  }
  check_r(r, "ap_covering_number");
  const std::int64_t rm = checked_mul(r, m, "ap_covering_number");
  return ceil_div(rm - r + 1, m);
}

}  // namespace approxcover
