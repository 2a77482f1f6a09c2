#include "approxcover/asymptotic.hpp"

#include <algorithm>
#include <numeric>
#include <utility>

#include "approxcover/detail/checked.hpp"
#include "approxcover/detail/parallel.hpp"
#include "approxcover/sumsets.hpp"

namespace approxcover {

using detail::checked_add;
using detail::checked_mul;

IntSet NormalForm::restore() const {
  std::vector<std::int64_t> out;
  out.reserve(normalized.size());
  normalized.for_each([&](std::int64_t v) {
    out.push_back(checked_add(checked_mul(v, scale, "restore"), offset,
                              "restore"));
  });
  return IntSet::from_elements(std::move(out));
}

NormalForm normalize(const IntSet& a) {
  if (a.empty()) throw EmptySetError("normalize");
  const std::int64_t lo = a.min();
  a.span();
  std::uint64_t g = 0;
  a.for_each([&](std::int64_t v) {
    g = std::gcd(g, static_cast<std::uint64_t>(v - lo));
  });
  if (g == 0) return NormalForm{IntSet{0}, lo, 1};
  const auto scale = static_cast<std::int64_t>(g);
  std::vector<std::int64_t> out;
  out.reserve(a.size());
  a.for_each([&](std::int64_t v) { out.push_back((v - lo) / scale); });
  return NormalForm{IntSet::from_elements(std::move(out)), lo, scale};
}

namespace {

void require_pair(const IntSet& a, const char* where) {
  if (a.empty()) throw EmptySetError(where);
  if (a.size() < 2) {
    throw InvalidSizeError(std::string(where) + ": needs at least two elements");
  }
}

}  // namespace

bool endpoint_gap_condition(const IntSet& a) {
  require_pair(a, "endpoint_gap_condition");
  const NormalForm nf = normalize(a);
  const std::int64_t b = nf.top();
  return nf.normalized.contains(1) && nf.normalized.contains(b - 1);
}

IndexRange default_window(const IntSet& a) {
  const std::int64_t b = normalize(a).top();
  return IndexRange{1, std::max<std::int64_t>(b + 4, 8)};
}

std::int64_t AsymptoticReport::asymptotic_covering_number(
    std::int64_t r) const {
  if (r < 1) throw InvalidFoldError("asymptotic_covering_number: r >= 1");
  if (r == 1) return 1;
  return condition_holds ? r : r + 1;
}

AsymptoticReport is_asymptotic_ap(const IntSet& a,
                                  std::optional<IndexRange> window) {
  require_pair(a, "is_asymptotic_ap");
  const NormalForm nf = normalize(a);
  const std::int64_t b = nf.top();

  AsymptoticReport rep;
  rep.condition_holds = endpoint_gap_condition(a);
  rep.top = b;
  rep.theoretical_threshold = std::max<std::int64_t>(1, b - 2);
  rep.window_checked = window.value_or(default_window(a));
  if (rep.window_checked.first < 1) {
    throw InvalidFoldError("is_asymptotic_ap: window must start at h >= 1");
  }

  // AP-ness of hA and hB coincide, so the scan runs on the normal form.
  const std::vector<IntSet> folds =
      hfold_prefix(nf.normalized, rep.window_checked.last);
  std::optional<std::int64_t> streak_start;
  bool consistent = true;
  for (std::int64_t h = rep.window_checked.first; h <= rep.window_checked.last;
       ++h) {
    const IntSet& hb = folds[static_cast<std::size_t>(h - 1)];
    const bool ap = detect_ap(hb).has_value();
    if (ap) {
      if (!streak_start) streak_start = h;
    } else {
      streak_start.reset();
    }
    if (rep.condition_holds) {
      if (h >= rep.theoretical_threshold &&
          !(hb.is_interval() && hb.max() == h * b)) {
        consistent = false;
      }
    } else if (ap) {
      consistent = false;
    }
  }
  rep.empirical_threshold = streak_start;
  if (rep.condition_holds && rep.empirical_threshold &&
      *rep.empirical_threshold >
          std::max(rep.theoretical_threshold, rep.window_checked.first)) {
    consistent = false;
  }
  rep.window_consistent = consistent;
  return rep;
}

std::int64_t asymptotic_covering_number(const IntSet& a, std::int64_t r) {
  require_pair(a, "asymptotic_covering_number");
  if (r < 1) throw InvalidFoldError("asymptotic_covering_number: r >= 1");
  if (r == 1) return 1;
  return endpoint_gap_condition(a) ? r : r + 1;
}

std::vector<SweepRow> sweep(const IntSet& a, std::int64_t r,
                            IndexRange window, const SweepOptions& options) {
  if (a.empty()) throw EmptySetError("sweep");
  if (window.first < 1) throw InvalidFoldError("sweep: window must start at h >= 1");
  if (r < 1) throw InvalidFoldError("sweep: r must be >= 1");
  const auto n = static_cast<std::size_t>(window.count());
  return detail::parallel_map(n, options.jobs, [&](std::size_t i) {
    SweepRow row;
    row.h = window.first + static_cast<std::int64_t>(i);
    const IntSet ha = hfold(a, row.h);
    row.size_hA = static_cast<std::int64_t>(ha.size());
    row.is_ap = detect_ap(ha).has_value();
    try {
      row.cover = covering_number(ha, r, options.solver);
    } catch (const BudgetExceededError& e) {
      row.error = e.what();
    }
    return row;
  });
}

namespace {

void summarize(const IntSet& a, std::int64_t r, StabilizationReport& rep) {
  rep.tail_value = rep.rows.back().cover->covering_number;
  rep.tail_start = rep.rows.back().h;
  for (auto it = rep.rows.rbegin(); it != rep.rows.rend(); ++it) {
    if (it->cover->covering_number != rep.tail_value) break;
    rep.tail_start = it->h;
  }
  rep.tail_matches = rep.tail_value == rep.expected;

  const auto m = static_cast<std::int64_t>(a.size());
  // Below r translates are possible only for h <= (r - 2) / (m - 1).
  rep.lower_bound_from = r >= 2 ? (r - 2) / (m - 1) + 1 : 1;
  rep.lower_bound_holds = true;
  for (const SweepRow& row : rep.rows) {
    if (row.h >= rep.lower_bound_from && row.cover->covering_number < r) {
      rep.lower_bound_holds = false;
    }
  }
}

void append_rows(const IntSet& a, std::int64_t r, IndexRange window,
                 const SweepOptions& options, StabilizationReport& rep) {
  for (SweepRow& row : sweep(a, r, window, options)) {
    if (!row.cover) throw BudgetExceededError(options.solver.node_budget,
                                              options.solver.node_budget);
    rep.rows.push_back(std::move(row));
  }
}

}  // namespace

StabilizationReport stabilization_check(const IntSet& a, std::int64_t r,
                                        IndexRange window,
                                        const SweepOptions& options) {
  require_pair(a, "stabilization_check");
  StabilizationReport rep;
  rep.expected = asymptotic_covering_number(a, r);
  append_rows(a, r, window, options, rep);
  summarize(a, r, rep);
  return rep;
}

StabilizationReport scan_tail(const IntSet& a, std::int64_t r,
                              const TailScanOptions& options) {
  require_pair(a, "scan_tail");
  StabilizationReport rep;
  rep.expected = asymptotic_covering_number(a, r);
  std::int64_t last = default_window(a).last + 6;
  if (last > options.max_h) {
    throw NoStabilizationError("scan_tail: initial window exceeds max_h");
  }
  append_rows(a, r, IndexRange{1, last}, options.sweep, rep);
  summarize(a, r, rep);
  while (last - rep.tail_start + 1 < options.min_tail) {
    const std::int64_t next = rep.tail_start + options.min_tail - 1;
    if (next > options.max_h) {
      throw NoStabilizationError("scan_tail: no constant tail of " +
                                 std::to_string(options.min_tail) +
                                 " folds up to h = " +
                                 std::to_string(options.max_h));
    }
    append_rows(a, r, IndexRange{last + 1, next}, options.sweep, rep);
    last = next;
    summarize(a, r, rep);
  }
  return rep;
}

namespace {

// End of the run of `runs` containing v, or nullopt if v is not covered.
std::optional<std::int64_t> run_end(const std::vector<Run>& runs,
                                    std::int64_t v) {
  auto it = std::upper_bound(
      runs.begin(), runs.end(), v,
      [](std::int64_t x, const Run& run) { return x < run.lo; });
  if (it == runs.begin()) return std::nullopt;
  --it;
  if (v > it->hi) return std::nullopt;
  return it->hi;
}

}  // namespace

StructureConstants structure_constants(const IntSet& a, IndexRange window,
                                       std::int64_t min_folds) {
  require_pair(a, "structure_constants");
  if (window.first < 1) {
    throw InvalidFoldError("structure_constants: window must start at h >= 1");
  }
  const NormalForm nf = normalize(a);
  const std::int64_t b = nf.top();
  const std::vector<IntSet> folds = hfold_prefix(nf.normalized, window.last);
  std::vector<std::vector<Run>> runs;
  runs.reserve(folds.size());
  for (const IntSet& f : folds) runs.push_back(f.runs());

  const std::int64_t last_h0 = window.last - std::max<std::int64_t>(min_folds, 1) + 1;
  for (std::int64_t h0 = window.first; h0 <= last_h0; ++h0) {
    const IntSet& base = folds[static_cast<std::size_t>(h0 - 1)];
    std::optional<StructureConstants> found;
    // 0 lies in B, so h0 B is contained in every later hB and each c can be
    // tested against the runs of every h in the window.
    base.for_each([&](std::int64_t c) {
      if (found) return;
      std::int64_t dprime = 0;
      for (std::int64_t h = h0; h <= window.last; ++h) {
        const auto end = run_end(runs[static_cast<std::size_t>(h - 1)], c);
        if (!end) {
          dprime = -1;
          break;
        }
        dprime = std::max(dprime, h * b - *end);
      }
      if (dprime >= 0 && c <= h0 * b - dprime) {
        found = StructureConstants{h0, c, dprime};
      }
    });
    if (found) return *found;
  }
  throw NoStabilizationError("structure_constants: no interval [c, h*max - d] "
                             "persists through window " +
                             format_index_range(window));
}

}  // namespace approxcover
