#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>

#include "approxcover/cli/report.hpp"
#include "approxcover/cli/suites.hpp"
#include "approxcover/covering.hpp"

namespace approxcover::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitVerifyFailed = 1;
inline constexpr int kExitUsage = 2;
inline constexpr int kExitBudget = 3;

struct RunOptions {
  SolverOptions solver;
  unsigned jobs = 1;
};

// Each command parses its raw arguments and wraps one library call. Library
// and parse errors become status=error reports; nothing throws.
RunReport cmd_sumset(std::string_view set, std::string_view h);
RunReport cmd_cover(std::string_view set, std::string_view r, const RunOptions& options = {});
RunReport cmd_asymptotic(std::string_view set, std::string_view r,
                         const std::optional<std::string>& window, bool with_sweep,
                         const RunOptions& options = {});
RunReport cmd_sweep(std::string_view set, std::string_view r, std::string_view h,
                    const RunOptions& options = {});
RunReport cmd_verify(const VerifyOptions& options);

/// 0 ok, 1 verification failure, 2 usage or input error, 3 budget exceeded
/// (including any sweep row that ran out of budget).
int exit_code(const RunReport& report);

/// Full command-line entry point; returns the process exit code.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace approxcover::cli
