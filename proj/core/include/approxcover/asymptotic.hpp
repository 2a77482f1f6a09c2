#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "approxcover/covering.hpp"
#include "approxcover/int_set.hpp"

namespace approxcover {

/// A = scale * normalized + offset, with min(normalized) = 0 and the
/// positive elements of normalized coprime. Singletons map to {0}, scale 1.
struct NormalForm {
  IntSet normalized;
  std::int64_t offset = 0;
  std::int64_t scale = 1;

  /// max of the normal form (often written b).
  std::int64_t top() const { return normalized.max(); }
  /// scale * normalized + offset.
  IntSet restore() const;
};

NormalForm normalize(const IntSet& a);

/// a2 = a1 + d and am = a(m-1) + d, i.e. both extreme gaps of the normal
/// form equal 1. Throws InvalidSizeError for |A| < 2.
bool endpoint_gap_condition(const IntSet& a);

/// [1, max(b + 4, 8)] where b is the max of the normal form.
IndexRange default_window(const IntSet& a);

struct AsymptoticReport {
  bool condition_holds = false;
  /// max of the normal form.
  std::int64_t top = 0;
  /// hA is an interval-AP for every h >= this value (only meaningful when
  /// condition_holds); max(1, b - 2).
  std::int64_t theoretical_threshold = 1;
  /// Smallest h in the window from which hA stays an AP through the end of
  /// the window; empty if the last fold in the window is not an AP.
  std::optional<std::int64_t> empirical_threshold;
  IndexRange window_checked;
  /// The scan agrees with the characterization: with the condition, hB is
  /// the full interval [0, hb] from the threshold on; without it, no hA in
  /// the window is an AP.
  bool window_consistent = false;

  /// r when the condition holds, r + 1 otherwise (1 for r = 1).
  std::int64_t asymptotic_covering_number(std::int64_t r) const;
};

AsymptoticReport is_asymptotic_ap(const IntSet& a,
                                  std::optional<IndexRange> window = {});

/// Closed form for the asymptotic r-covering number; never runs the solver.
std::int64_t asymptotic_covering_number(const IntSet& a, std::int64_t r);

struct SweepOptions {
  SolverOptions solver;
  unsigned jobs = 1;
};

/// One h of a sweep over hA. `cover` is empty and `error` set when the
/// solver gave up on this h.
struct SweepRow {
  std::int64_t h = 0;
  std::int64_t size_hA = 0;
  bool is_ap = false;
  std::optional<CoverResult> cover;
  std::string error;
};

/// (h, |hA|, hA is AP, C_r(hA)) for each h in the window, in h order.
/// Budget failures are recorded per row.
std::vector<SweepRow> sweep(const IntSet& a, std::int64_t r,
                            IndexRange window,
                            const SweepOptions& options = {});

struct StabilizationReport {
  std::vector<SweepRow> rows;
  /// Closed-form asymptotic covering number.
  std::int64_t expected = 0;
  /// Value on the longest constant suffix of the window, and where that
  /// suffix starts.
  std::int64_t tail_value = 0;
  std::int64_t tail_start = 0;
  bool tail_matches = false;
  /// C_r(hA) >= r for every h in the window with h > (r - 2) / (m - 1).
  bool lower_bound_holds = false;
  std::int64_t lower_bound_from = 1;
};

/// Computes C_r(hA) over the window and compares the tail with the closed
/// form. BudgetExceededError from any h is rethrown.
StabilizationReport stabilization_check(const IntSet& a, std::int64_t r,
                                        IndexRange window,
                                        const SweepOptions& options = {});

struct TailScanOptions {
  SweepOptions sweep;
  /// Folds the constant suffix must span.
  std::int64_t min_tail = 7;
  /// Largest h the scan may reach before giving up.
  std::int64_t max_h = 64;
};

/// stabilization_check over [1, H1], where H1 starts at
/// max(b + 4, 8) + 6 and grows until the constant suffix spans at least
/// options.min_tail folds. Throws NoStabilizationError past options.max_h.
StabilizationReport scan_tail(const IntSet& a, std::int64_t r,
                              const TailScanOptions& options = {});

struct StructureConstants {
  std::int64_t h0 = 0;
  std::int64_t c = 0;
  std::int64_t dprime = 0;
  friend bool operator==(const StructureConstants&,
                         const StructureConstants&) = default;
};

/// Smallest h0 in the window, then smallest c, then smallest dprime, such
/// that [c, h * max - dprime] is a nonempty subset of hA for every h in
/// [h0, window.last]. Computed on the normal form of A.
///
/// [h0, window.last] must span at least `min_folds` folds; with a single
/// fold the point [h*max, h*max] would always qualify. Throws
/// NoStabilizationError if no h0 in the window works.
StructureConstants structure_constants(const IntSet& a, IndexRange window,
                                       std::int64_t min_folds = 3);

}  // namespace approxcover
