#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "approxcover/cli/report.hpp"
#include "approxcover/covering.hpp"
#include "approxcover/int_set.hpp"

namespace approxcover::cli {

/// Which bounds a suite reads; the others are ignored and left out of
/// rerun commands.
struct SuiteUses {
  bool sets = false;  // --max-elem / --max-size
  bool r = false;
  bool h = false;
  bool trials = false;  // --trials / --seed
};

struct SuiteBounds {
  std::int64_t max_elem = 0;
  std::int64_t max_size = 0;
  IndexRange r;
  IndexRange h;
  std::uint64_t trials = 0;
};

struct SuiteInfo {
  std::string name;
  std::string alias;  // empty when there is none
  std::string description;
  SuiteUses uses;
  SuiteBounds defaults;
};

const std::vector<SuiteInfo>& suites();
/// Lookup by name or alias; nullptr when unknown.
const SuiteInfo* find_suite(std::string_view name);

struct VerifyOptions {
  std::string suite;
  std::optional<std::int64_t> max_elem;
  std::optional<std::int64_t> max_size;
  std::optional<IndexRange> r;
  std::optional<IndexRange> h;
  std::optional<std::uint64_t> trials;
  std::uint64_t seed = 1;
  std::uint64_t skip = 0;
  std::optional<std::uint64_t> limit;
  SolverOptions solver;
  unsigned jobs = 1;
};

SuiteBounds resolve_bounds(const SuiteInfo& info, const VerifyOptions& options);

/// Runs the suite over its instances (normal-form sets in (max, size,
/// lexicographic) order, or seeded random draws), honoring skip/limit.
/// Throws ParseError for unknown suites and InvalidSizeError for bounds
/// outside what the suite accepts.
VerificationSummary run_suite(const VerifyOptions& options);

}  // namespace approxcover::cli
