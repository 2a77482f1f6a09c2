#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <json.hpp>

#include "approxcover/int_set.hpp"

namespace approxcover::cli {

using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;
/// Element lists longer than this are replaced by summary statistics.
inline constexpr std::size_t kElisionThreshold = 10'000;

enum class Status { kOk, kError };

/// Output of one CLI command; serializes to the versioned JSON schema.
struct RunReport {
  std::string command;
  Json inputs = Json::object();
  Json results = Json::object();
  /// (step, wall-clock milliseconds) in execution order.
  std::vector<std::pair<std::string, double>> timings_ms;
  Status status = Status::kOk;

  /// Marks the report failed and stores the message under results.error.
  void fail(std::string_view code, std::string_view message);
  std::string error_message() const;
};

Json to_json(const RunReport& report);
/// Throws ParseError on schema violations (wrong version, missing fields,
/// negative timings, unknown status).
RunReport report_from_json(const Json& json);

struct FailureRecord {
  std::string set;
  Json params = Json::object();
  Json expected;
  Json got;
  std::string rerun;
};

struct BudgetRecord {
  std::string set;
  Json params = Json::object();
  std::uint64_t nodes = 0;
  std::string rerun;
};

struct VerificationSummary {
  std::string suite;
  std::uint64_t instances_checked = 0;
  std::vector<FailureRecord> failures;
  std::vector<BudgetRecord> budget_exceeded;
  /// Suite-specific counters, e.g. how many equality cases were seen.
  Json stats = Json::object();
  double elapsed_ms = 0;

  bool passed() const { return failures.empty(); }
};

Json to_json(const VerificationSummary& summary);
VerificationSummary summary_from_json(const Json& json);

/// {min, max, size, is_interval, elided[, elements]}; the element list is
/// dropped above kElisionThreshold.
Json set_payload(const IntSet& set);
Json element_array(const IntSet& set);

enum class Format { kJson, kCsv, kText };
Format parse_format(std::string_view name);

/// RFC 4180: quote when the field holds a comma, quote or line break.
std::string csv_field(std::string_view text);
std::string csv_line(const std::vector<std::string>& fields);
/// Splits one CSV document into records; quoted fields may span lines.
std::vector<std::vector<std::string>> parse_csv(std::string_view text);

/// Scalar cell text shared by the CSV and text renderers: booleans as
/// true/false, null as empty, integer arrays as a set literal.
std::string cell(const Json& value);

void render(const RunReport& report, Format format, std::ostream& out);

}  // namespace approxcover::cli
