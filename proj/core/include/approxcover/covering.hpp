#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "approxcover/int_set.hpp"

namespace approxcover {

struct SolverOptions {
  /// Search nodes allowed across all phases of one solve.
  std::uint64_t node_budget = 100'000'000;
};

/// Set-cover view of "rA is contained in A + X".
///
/// Only offsets x with (A + x) meeting rA can appear in a minimal cover,
/// so the search space is rA - A.
struct CoverInstance {
  IntSet base;
  std::int64_t r = 1;
  IntSet universe;                       // rA
  std::vector<std::int64_t> candidates;  // sorted rA - A

  static CoverInstance build(const IntSet& base, std::int64_t r);
};

struct CoverResult {
  std::int64_t covering_number = 0;
  /// Lexicographically smallest optimal X (as a sorted offset list).
  IntSet witness;
  std::uint64_t nodes_explored = 0;
  bool optimal = true;
};

/// Exact r-covering number C_r(A): the fewest translates of A whose union
/// contains rA.
///
/// Depth-first branch and bound, branching on the uncovered element with
/// the fewest admissible candidates, seeded with a greedy cover. A second
/// pass finds the lexicographically smallest optimal witness. Throws
/// BudgetExceededError when options.node_budget is exhausted.
CoverResult covering_number(const IntSet& a, std::int64_t r,
                            const SolverOptions& options = {});

CoverResult solve_cover(const CoverInstance& instance,
                        const SolverOptions& options = {});

/// Some X with |X| <= max_translates and rA inside A + X, or nullopt if
/// none exists. Pure search: only the counting bound ceil(|uncovered| / m)
/// prunes, none of the closed-form bounds. Throws BudgetExceededError.
std::optional<IntSet> find_cover(const IntSet& a, std::int64_t r,
                                 std::int64_t max_translates,
                                 const SolverOptions& options = {});

/// Greedy cover (largest new coverage first, ties to the smaller offset).
/// Not optimal in general; used as the initial incumbent.
IntSet greedy_cover(const CoverInstance& instance);

/// True iff rA is contained in A + X. Independent of the solver.
bool is_approximate_group(const IntSet& a, std::int64_t r, const IntSet& x);

/// Counting bound: ceil((rm - r + 1) / m), raised to r when A is not an
/// arithmetic progression. Returns 1 for singletons.
std::int64_t lower_bound(const IntSet& a, std::int64_t r);

/// C_r of any arithmetic progression of size m: ceil((rm - r + 1) / m).
/// Throws InvalidSizeError for m < 2.
std::int64_t ap_covering_number(std::int64_t m, std::int64_t r);

}  // namespace approxcover
