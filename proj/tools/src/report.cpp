#include "approxcover/cli/report.hpp"

#include <algorithm>
#include <iomanip>
#include <ostream>
#include <sstream>

#include "approxcover/error.hpp"

namespace approxcover::cli {

void RunReport::fail(std::string_view code, std::string_view message) {
  status = Status::kError;
  results["error"] = std::string(message);
  results["code"] = std::string(code);
}

std::string RunReport::error_message() const {
  if (status != Status::kError) return {};
  const auto it = results.find("error");
  return it != results.end() && it->is_string() ? it->get<std::string>() : "";
}

Json to_json(const RunReport& report) {
  Json timings = Json::object();
  for (const auto& [step, ms] : report.timings_ms) timings[step] = ms;
  Json out;
  out["schema"] = kSchemaVersion;
  out["command"] = report.command;
  out["inputs"] = report.inputs;
  out["results"] = report.results;
  out["timings_ms"] = std::move(timings);
  out["status"] = report.status == Status::kOk ? "ok" : "error";
  return out;
}

namespace {

const Json& field(const Json& json, const char* key) {
  if (!json.is_object() || !json.contains(key)) {
    throw ParseError(std::string("report: missing field '") + key + "'");
  }
  return json.at(key);
}

template <class T>
T typed(const Json& json, const char* key) {
  try {
    return field(json, key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw ParseError(std::string("report: field '") + key + "' has the wrong type");
  }
}

}  // namespace

RunReport report_from_json(const Json& json) {
  if (typed<int>(json, "schema") != kSchemaVersion) {
    throw ParseError("report: unsupported schema version");
  }
  RunReport report;
  report.command = typed<std::string>(json, "command");
  report.inputs = field(json, "inputs");
  report.results = field(json, "results");
  const Json& timings = field(json, "timings_ms");
  if (!timings.is_object()) throw ParseError("report: timings_ms must be an object");
  for (const auto& [step, ms] : timings.items()) {
    if (!ms.is_number() || ms.get<double>() < 0) {
      throw ParseError("report: timing '" + step + "' must be a nonnegative number");
    }
    report.timings_ms.emplace_back(step, ms.get<double>());
  }
  const auto status = typed<std::string>(json, "status");
  if (status == "ok") {
    report.status = Status::kOk;
  } else if (status == "error") {
    report.status = Status::kError;
  } else {
    throw ParseError("report: unknown status '" + status + "'");
  }
  return report;
}

namespace {

Json failure_json(const FailureRecord& f) {
  Json out;
  out["set"] = f.set;
  out["params"] = f.params;
  out["expected"] = f.expected;
  out["got"] = f.got;
  out["rerun"] = f.rerun;
  return out;
}

Json budget_json(const BudgetRecord& b) {
  Json out;
  out["set"] = b.set;
  out["params"] = b.params;
  out["nodes"] = b.nodes;
  out["rerun"] = b.rerun;
  return out;
}

}  // namespace

Json to_json(const VerificationSummary& s) {
  Json out;
  out["suite"] = s.suite;
  out["instances_checked"] = s.instances_checked;
  out["passed"] = s.passed();
  Json failures = Json::array();
  for (const auto& f : s.failures) failures.push_back(failure_json(f));
  out["failures"] = std::move(failures);
  Json budgets = Json::array();
  for (const auto& b : s.budget_exceeded) budgets.push_back(budget_json(b));
  out["budget_exceeded"] = std::move(budgets);
  out["stats"] = s.stats;
  out["elapsed_ms"] = s.elapsed_ms;
  return out;
}

VerificationSummary summary_from_json(const Json& json) {
  VerificationSummary s;
  s.suite = typed<std::string>(json, "suite");
  s.instances_checked = typed<std::uint64_t>(json, "instances_checked");
  for (const Json& f : field(json, "failures")) {
    s.failures.push_back(FailureRecord{typed<std::string>(f, "set"), field(f, "params"),
                                       field(f, "expected"), field(f, "got"),
                                       typed<std::string>(f, "rerun")});
  }
  for (const Json& b : field(json, "budget_exceeded")) {
    s.budget_exceeded.push_back(BudgetRecord{typed<std::string>(b, "set"), field(b, "params"),
                                             typed<std::uint64_t>(b, "nodes"),
                                             typed<std::string>(b, "rerun")});
  }
  s.stats = field(json, "stats");
  s.elapsed_ms = typed<double>(json, "elapsed_ms");
  return s;
}

Json element_array(const IntSet& set) {
  Json out = Json::array();
  set.for_each([&](std::int64_t v) { out.push_back(v); });
  return out;
}

Json set_payload(const IntSet& set) {
  Json out;
  out["size"] = set.size();
  out["min"] = set.empty() ? Json() : Json(set.min());
  out["max"] = set.empty() ? Json() : Json(set.max());
  out["is_interval"] = set.is_interval();
  const bool elided = set.size() > kElisionThreshold;
  out["elided"] = elided;
  out["elements"] = elided ? Json() : element_array(set);
  return out;
}

Format parse_format(std::string_view name) {
  if (name == "json") return Format::kJson;
  if (name == "csv") return Format::kCsv;
  if (name == "text") return Format::kText;
  throw ParseError("unknown format '" + std::string(name) + "' (json, csv, text)");
}

std::string csv_field(std::string_view text) {
  if (text.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(text);
  std::string out = "\"";
  for (char ch : text) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

std::string csv_line(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += csv_field(fields[i]);
  }
  out += "\r\n";
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> records;
  std::vector<std::string> record;
  std::string fld;
  bool quoted = false;
  bool any = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char ch = text[i];
    any = true;
    if (quoted) {
      if (ch == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          fld += '"';
          ++i;
        } else {
          quoted = false;
        }
      } else {
        fld += ch;
      }
    } else if (ch == '"') {
      quoted = true;
    } else if (ch == ',') {
      record.push_back(std::move(fld));
      fld.clear();
    } else if (ch == '\r' || ch == '\n') {
      if (ch == '\r' && i + 1 < text.size() && text[i + 1] == '\n') ++i;
      record.push_back(std::move(fld));
      fld.clear();
      records.push_back(std::move(record));
      record.clear();
      any = false;
    } else {
      fld += ch;
    }
  }
  if (quoted) throw ParseError("csv: unterminated quoted field");
  if (any) {
    record.push_back(std::move(fld));
    records.push_back(std::move(record));
  }
  return records;
}

std::string cell(const Json& value) {
  if (value.is_null()) return "";
  if (value.is_boolean()) return value.get<bool>() ? "true" : "false";
  if (value.is_string()) return value.get<std::string>();
  if (value.is_array() &&
      std::all_of(value.begin(), value.end(), [](const Json& v) { return v.is_number_integer(); })) {
    std::string out;
    for (std::size_t i = 0; i < value.size(); ++i) {
      if (i) out += ',';
      out += value[i].dump();
    }
    return out;
  }
  return value.dump();
}

namespace {

bool is_table(const Json& value) {
  return value.is_array() && !value.empty() &&
         std::all_of(value.begin(), value.end(), [](const Json& v) { return v.is_object(); });
}

// Scalar leaves of an object as dotted keys, skipping tables.
void flatten(const Json& obj, const std::string& prefix,
             std::vector<std::pair<std::string, const Json*>>& out) {
  for (const auto& [key, value] : obj.items()) {
    const std::string name = prefix.empty() ? key : prefix + "." + key;
    if (value.is_object()) {
      flatten(value, name, out);
    } else if (!is_table(value) && !(value.is_array() && key == "rows")) {
      out.emplace_back(name, &value);
    }
  }
}

void write_table(const std::vector<std::string>& header, const Json& rows, std::ostream& out) {
  out << csv_line(header);
  for (const Json& row : rows) {
    std::vector<std::string> fields;
    for (const auto& key : header) fields.push_back(row.contains(key) ? cell(row.at(key)) : "");
    out << csv_line(fields);
  }
}

const std::vector<std::string> kSweepColumns = {"h", "size_hA", "is_ap", "covering_number",
                                                "witness", "error"};
const std::vector<std::string> kRecordColumns = {"kind", "set", "params", "expected",
                                                 "got", "nodes", "rerun"};

Json verify_records(const Json& results) {
  Json rows = Json::array();
  for (const char* kind : {"failures", "budget_exceeded"}) {
    for (Json rec : results.value(kind, Json::array())) {
      rec["kind"] = std::string(kind) == "failures" ? "failure" : "budget";
      rows.push_back(std::move(rec));
    }
  }
  return rows;
}

void render_csv(const RunReport& report, std::ostream& out) {
  const Json& res = report.results;
  if (report.status == Status::kError) {
    write_table({"status", "code", "error"},
                Json::array({Json{{"status", "error"}, {"code", res.value("code", "")},
                                  {"error", report.error_message()}}}),
                out);
    return;
  }
  if (report.command == "sweep") {
    write_table(kSweepColumns, res.at("rows"), out);
    return;
  }
  if (report.command == "verify") {
    write_table(kRecordColumns, verify_records(res), out);
    return;
  }
  std::vector<std::pair<std::string, const Json*>> leaves;
  flatten(res, "", leaves);
  std::vector<std::string> header;
  std::vector<std::string> row;
  for (const auto& [key, value] : leaves) {
    header.push_back(key);
    row.push_back(cell(*value));
  }
  out << csv_line(header) << csv_line(row);
}

void text_table(const Json& rows, const std::string& indent, std::ostream& out) {
  std::vector<std::string> header;
  for (const auto& [key, value] : rows.front().items()) header.push_back(key);
  std::vector<std::vector<std::string>> cells;
  std::vector<std::size_t> width(header.size());
  for (std::size_t c = 0; c < header.size(); ++c) width[c] = header[c].size();
  for (const Json& row : rows) {
    std::vector<std::string> line;
    for (std::size_t c = 0; c < header.size(); ++c) {
      line.push_back(row.contains(header[c]) ? cell(row.at(header[c])) : "");
      width[c] = std::max(width[c], line.back().size());
    }
    cells.push_back(std::move(line));
  }
  const auto emit = [&](const std::vector<std::string>& line) {
    out << indent;
    for (std::size_t c = 0; c < line.size(); ++c) {
      out << (c ? "  " : "") << std::left << std::setw(static_cast<int>(width[c])) << line[c];
    }
    out << '\n';
  };
  emit(header);
  for (const auto& line : cells) emit(line);
}

void text_object(const Json& obj, const std::string& indent, std::ostream& out) {
  for (const auto& [key, value] : obj.items()) {
    if (value.is_object()) {
      out << indent << key << ":\n";
      text_object(value, indent + "  ", out);
    } else if (is_table(value)) {
      out << indent << key << ":\n";
      text_table(value, indent + "  ", out);
    } else {
      out << indent << key << ": " << cell(value) << '\n';
    }
  }
}

}  // namespace

void render(const RunReport& report, Format format, std::ostream& out) {
  switch (format) {
    case Format::kJson:
      out << to_json(report).dump(2) << '\n';
      break;
    case Format::kCsv:
      render_csv(report, out);
      break;
    case Format::kText:
      out << report.command << " (" << (report.status == Status::kOk ? "ok" : "error") << ")\n";
      text_object(report.results, "  ", out);
      break;
  }
}

}  // namespace approxcover::cli
