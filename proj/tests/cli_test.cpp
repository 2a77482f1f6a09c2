#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "approxcover/asymptotic.hpp"
#include "approxcover/cli/app.hpp"
#include "approxcover/cli/report.hpp"
#include "approxcover/covering.hpp"
#include "approxcover/sumsets.hpp"
#include "oracle.hpp"
#include "test_util.hpp"

namespace ac = approxcover;
using ac::cli::Json;

namespace {

struct Invocation {
  int code = 0;
  std::string out;
  std::string err;
};

Invocation invoke(std::vector<std::string> args) {
  args.insert(args.begin(), "approxcover");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  Invocation inv;
  inv.code = ac::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  inv.out = out.str();
  inv.err = err.str();
  return inv;
}

Invocation invoke_line(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> words{std::istream_iterator<std::string>(in), {}};
  EXPECT_FALSE(words.empty());
  words.erase(words.begin());  // program name
  return invoke(words);
}

// Report with the run-dependent fields removed.
Json stable(Json j) {
  j.erase("timings_ms");
  auto& results = j["results"];
  results.erase("nodes_explored");
  results.erase("elapsed_ms");
  if (results.contains("rows"))
    for (auto& row : results["rows"]) row.erase("nodes_explored");
  return j;
}

class EnvGuard {
 public:
  EnvGuard(const char* name, const char* value) : name_(name) { setenv(name, value, 1); }
  ~EnvGuard() { unsetenv(name_); }
  EnvGuard(const EnvGuard&) = delete;
  EnvGuard& operator=(const EnvGuard&) = delete;

 private:
  const char* name_;
};

std::vector<std::int64_t> ints(const Json& arr) { return arr.get<std::vector<std::int64_t>>(); }

}  // namespace

// ---- golden files -------------------------------------------------------

struct GoldenCase {
  std::string name;
  std::vector<std::string> args;
};

class Golden : public ::testing::TestWithParam<GoldenCase> {};

TEST_P(Golden, MatchesFile) {
  const auto& param = GetParam();
  const auto inv = invoke(param.args);
  const Json got = stable(Json::parse(inv.out));
  const std::filesystem::path path = std::filesystem::path(APPROXCOVER_GOLDEN_DIR) / (param.name + ".json");
  if (std::getenv("APPROXCOVER_UPDATE_GOLDEN") != nullptr) {
    std::ofstream(path) << got.dump(2) << '\n';
    GTEST_SKIP() << "rewrote " << path;
  }
  std::ifstream in(path);
  ASSERT_TRUE(in) << "missing golden " << path;
  const Json want = Json::parse(in);
  EXPECT_EQ(got, want) << got.dump(2);
}

INSTANTIATE_TEST_SUITE_P(
    Cli, Golden,
    ::testing::Values(
        GoldenCase{"sumset_013_h2", {"sumset", "--set", "0,1,3", "--h", "2"}},
        GoldenCase{"sumset_01_h1", {"sumset", "--set", "0,1", "--h", "1"}},
        GoldenCase{"sumset_137_h2", {"sumset", "--set", "1,3,7", "--h", "2"}},
        GoldenCase{"cover_01_r3", {"cover", "--set", "0,1", "--r", "3"}},
        GoldenCase{"cover_012_r4", {"cover", "--set", "0,1,2", "--r", "4"}},
        GoldenCase{"cover_013_r2", {"cover", "--set", "0,1,3", "--r", "2"}},
        GoldenCase{"asymptotic_0134_r2", {"asymptotic", "--set", "0,1,3,4", "--r", "2"}},
        GoldenCase{"asymptotic_023_r2", {"asymptotic", "--set", "0,2,3", "--r", "2"}},
        GoldenCase{"asymptotic_57_r6", {"asymptotic", "--set", "5,7", "--r", "6"}},
        GoldenCase{"sweep_023_r2", {"sweep", "--set", "0,2,3", "--r", "2", "--h", "1..8"}},
        GoldenCase{"sweep_01_r2", {"sweep", "--set", "0,1", "--r", "2", "--h", "1..4"}},
        GoldenCase{"sweep_0134_r3", {"sweep", "--set", "0,1,3,4", "--r", "3", "--h", "1..8"}},
        GoldenCase{"cover_parse_error", {"cover", "--set", "0,x", "--r", "2"}}),
    [](const auto& info) { return info.param.name; });

// ---- example values, checked against brute force ---------------------------

TEST(CliExamples, Sumset) {
  auto j = Json::parse(invoke({"sumset", "--set", "0,1,3", "--h", "2"}).out);
  EXPECT_EQ(ints(j["results"]["elements"]), (std::vector<std::int64_t>{0, 1, 2, 3, 4, 6}));
  EXPECT_EQ(j["results"]["size"], 6);

  j = Json::parse(invoke({"sumset", "--set", "0,1", "--h", "1"}).out);
  EXPECT_EQ(ints(j["results"]["elements"]), (std::vector<std::int64_t>{0, 1}));

  j = Json::parse(invoke({"sumset", "--set", "1,3,7", "--h", "2"}).out);
  EXPECT_EQ(j["results"]["size"], 6);
  EXPECT_EQ(j["results"]["size"], oracle::hfold({1, 3, 7}, 2).size());
}

TEST(CliExamples, Cover) {
  const auto value = [](const char* set, const char* r) {
    return Json::parse(invoke({"cover", "--set", set, "--r", r}).out)["results"]["covering_number"].get<int>();
  };
  EXPECT_EQ(value("0,1", "3"), 2);
  EXPECT_EQ(value("0,1,2", "4"), 3);
  EXPECT_EQ(value("0,1,3", "2"), 3);
  EXPECT_EQ(value("0,1,3", "2"), oracle::covering_number({0, 1, 3}, 2));
}

TEST(CliExamples, Asymptotic) {
  auto r = Json::parse(invoke({"asymptotic", "--set", "0,1,3,4", "--r", "2"}).out)["results"];
  EXPECT_TRUE(r["condition_holds"].get<bool>());
  EXPECT_EQ(r["asymptotic_covering_number"], 2);
  EXPECT_EQ(r["theoretical_threshold"], 2);

  r = Json::parse(invoke({"asymptotic", "--set", "0,2,3", "--r", "2"}).out)["results"];
  EXPECT_FALSE(r["condition_holds"].get<bool>());
  EXPECT_EQ(r["asymptotic_covering_number"], 3);

  r = Json::parse(invoke({"asymptotic", "--set", "5,7", "--r", "6"}).out)["results"];
  EXPECT_EQ(r["asymptotic_covering_number"], 6);
}

TEST(CliExamples, AsymptoticSweepRows) {
  const auto r = Json::parse(invoke({"asymptotic", "--set", "0,2,3", "--r", "2", "--window", "1..6", "--sweep"}).out);
  ASSERT_EQ(r["results"]["rows"].size(), 6U);
  EXPECT_EQ(r["results"]["rows"][5]["covering_number"], 3);
}

TEST(CliExamples, Sweep) {
  auto j = Json::parse(invoke({"sweep", "--set", "0,2,3", "--r", "2", "--h", "1..8"}).out);
  const auto& rows = j["results"]["rows"];
  ASSERT_EQ(rows.size(), 8U);
  for (std::size_t i = 0; i < rows.size(); ++i) EXPECT_EQ(rows[i]["h"], i + 1);
  EXPECT_EQ(rows[7]["covering_number"], 3);
  EXPECT_EQ(rows[6]["covering_number"], 3);

  j = Json::parse(invoke({"sweep", "--set", "0,1", "--r", "2", "--h", "1..4"}).out);
  for (const auto& row : j["results"]["rows"]) EXPECT_LE(row["covering_number"].get<int>(), 2);

  j = Json::parse(invoke({"sweep", "--set", "0,1,3,4", "--r", "3", "--h", "1..8"}).out);
  EXPECT_EQ(j["results"]["rows"][7]["covering_number"], 3);
  EXPECT_EQ(j["results"]["rows"][6]["covering_number"], 3);
}

TEST(CliExamples, VerifyPairBound) {
  const auto inv =
      invoke({"verify", "--suite", "pair-bound", "--max-elem", "10", "--max-size", "4", "--r", "2..5"});
  EXPECT_EQ(inv.code, 0);
  const auto j = Json::parse(inv.out);
  EXPECT_TRUE(j["results"]["failures"].empty());
  EXPECT_GT(j["results"]["instances_checked"].get<int>(), 0);
}

TEST(CliExamples, VerifyGrowthLaw) {
  const auto inv = invoke({"verify", "--suite", "growth-law", "--max-elem", "12", "--max-size", "5", "--h", "1..6"});
  EXPECT_EQ(inv.code, 0);
  EXPECT_TRUE(Json::parse(inv.out)["results"]["failures"].empty());
}

// ---- payload equals the library result --------------------------------------

TEST(CliPayload, CoverMatchesLibrary) {
  for (const char* set : {"0,1,3", "2,5,6,9", "-4,0,7"}) {
    const auto a = ac::parse_set_literal(set);
    const auto lib = ac::covering_number(a, 3);
    const auto r = Json::parse(invoke({"cover", "--set", set, "--r", "3"}).out)["results"];
    EXPECT_EQ(r["covering_number"], lib.covering_number);
    EXPECT_EQ(ints(r["witness"]), lib.witness.elements());
    EXPECT_EQ(r["lower_bound"], ac::lower_bound(a, 3));
    EXPECT_EQ(r["nodes_explored"], lib.nodes_explored);
  }
}

TEST(CliPayload, SumsetMatchesLibrary) {
  const auto a = ac::parse_set_literal("0,4,9,10");
  const auto ha = ac::hfold(a, 5);
  const auto r = Json::parse(invoke({"sumset", "--set", "0,4,9,10", "--h", "5"}).out)["results"];
  EXPECT_EQ(ints(r["elements"]), ha.elements());
  EXPECT_EQ(r["is_interval"], ha.is_interval());
}

TEST(CliPayload, SweepMatchesLibrary) {
  const auto a = ac::parse_set_literal("0,1,5");
  const auto rows = ac::sweep(a, 2, ac::IndexRange{1, 5});
  const auto j = Json::parse(invoke({"sweep", "--set", "0,1,5", "--r", "2", "--h", "1..5"}).out);
  ASSERT_EQ(j["results"]["rows"].size(), rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const auto& row = j["results"]["rows"][i];
    EXPECT_EQ(row["size_hA"], rows[i].size_hA);
    EXPECT_EQ(row["is_ap"], rows[i].is_ap);
    EXPECT_EQ(row["covering_number"], rows[i].cover->covering_number);
    EXPECT_EQ(ints(row["witness"]), rows[i].cover->witness.elements());
  }
}

// ---- elision --------------------------------------------------------------

TEST(CliElision, LargeSumsetIsSummarized) {
  const auto r = Json::parse(invoke({"sumset", "--set", "0,1", "--h", "20000"}).out)["results"];
  EXPECT_TRUE(r["elided"].get<bool>());
  EXPECT_TRUE(r["elements"].is_null());
  EXPECT_EQ(r["size"], 20001);
  EXPECT_EQ(r["min"], 0);
  EXPECT_EQ(r["max"], 20000);
  EXPECT_TRUE(r["is_interval"].get<bool>());
}

TEST(CliElision, ThresholdIsInclusive) {
  auto r = Json::parse(invoke({"sumset", "--set", "0,1", "--h", "9999"}).out)["results"];
  EXPECT_FALSE(r["elided"].get<bool>());
  EXPECT_EQ(r["elements"].size(), 10000U);
  r = Json::parse(invoke({"sumset", "--set", "0,1", "--h", "10000"}).out)["results"];
  EXPECT_TRUE(r["elided"].get<bool>());
}

// ---- exit codes -----------------------------------------------------------

TEST(CliExit, Codes) {
  EXPECT_EQ(invoke({"cover", "--set", "0,1,3", "--r", "2"}).code, ac::cli::kExitOk);
  EXPECT_EQ(invoke({"cover", "--set", "0,x", "--r", "2"}).code, ac::cli::kExitUsage);
  EXPECT_EQ(invoke({"cover", "--set", "0,1", "--r", "0"}).code, ac::cli::kExitUsage);
  EXPECT_EQ(invoke({"sumset", "--set", "", "--h", "2"}).code, ac::cli::kExitUsage);
  EXPECT_EQ(invoke({"frobnicate"}).code, ac::cli::kExitUsage);
  EXPECT_EQ(invoke({}).code, ac::cli::kExitUsage);
  EXPECT_EQ(invoke({"--format", "xml", "sumset", "--set", "0", "--h", "1"}).code, ac::cli::kExitUsage);
  EXPECT_EQ(invoke({"verify", "--suite", "no-such-suite"}).code, ac::cli::kExitUsage);
  EXPECT_EQ(invoke({"--budget", "2", "cover", "--set", "0,2,3,7", "--r", "3"}).code, ac::cli::kExitBudget);
  EXPECT_EQ(invoke({"--budget", "2", "sweep", "--set", "0,2,3,7", "--r", "3", "--h", "1..2"}).code,
            ac::cli::kExitBudget);
}

TEST(CliExit, BudgetErrorCarriesNodeCount) {
  const auto j = Json::parse(invoke({"--budget", "2", "cover", "--set", "0,2,3,7", "--r", "3"}).out);
  EXPECT_EQ(j["status"], "error");
  EXPECT_EQ(j["results"]["code"], "BudgetExceeded");
  EXPECT_NE(j["results"]["error"].get<std::string>().find('3'), std::string::npos);
}

TEST(CliExit, VerifyFailureIsOne) {
  ac::cli::RunReport report;
  report.command = "verify";
  report.results["failures"] = Json::array({Json::object({{"set", "0,1"}})});
  EXPECT_EQ(ac::cli::exit_code(report), ac::cli::kExitVerifyFailed);
  report.results["failures"] = Json::array();
  EXPECT_EQ(ac::cli::exit_code(report), ac::cli::kExitOk);
}

// ---- formats ---------------------------------------------------------------

TEST(CliFormat, SweepCsvMatchesJson) {
  const std::vector<std::string> base{"sweep", "--set", "0,2,3,7", "--r", "2", "--h", "1..6"};
  auto json_args = base;
  json_args.insert(json_args.begin(), {"--format", "json"});
  auto csv_args = base;
  csv_args.insert(csv_args.begin(), {"--format", "csv"});
  const auto rows = Json::parse(invoke(json_args).out)["results"]["rows"];
  const auto csv = ac::cli::parse_csv(invoke(csv_args).out);
  ASSERT_EQ(csv.size(), rows.size() + 1);
  const auto& header = csv[0];
  for (std::size_t i = 0; i < rows.size(); ++i) {
    ASSERT_EQ(csv[i + 1].size(), header.size());
    for (std::size_t c = 0; c < header.size(); ++c)
      EXPECT_EQ(csv[i + 1][c], ac::cli::cell(rows[i][header[c]])) << header[c] << " row " << i;
  }
  EXPECT_EQ(header, (std::vector<std::string>{"h", "size_hA", "is_ap", "covering_number", "witness", "error"}));
}

TEST(CliFormat, SweepCsvMatchesJsonWithBudgetRows) {
  const std::vector<std::string> base{"--budget", "20", "sweep", "--set", "0,2,3,7", "--r", "3", "--h", "1..3"};
  auto csv_args = base;
  csv_args.insert(csv_args.begin(), {"--format", "csv"});
  const auto rows = Json::parse(invoke(base).out)["results"]["rows"];
  const auto csv = ac::cli::parse_csv(invoke(csv_args).out);
  ASSERT_EQ(csv.size(), rows.size() + 1);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t c = 0; c < csv[0].size(); ++c) EXPECT_EQ(csv[i + 1][c], ac::cli::cell(rows[i][csv[0][c]]));
}

TEST(CliFormat, CsvQuoting) {
  EXPECT_EQ(ac::cli::csv_field("plain"), "plain");
  EXPECT_EQ(ac::cli::csv_field("a,b"), "\"a,b\"");
  EXPECT_EQ(ac::cli::csv_field("say \"hi\""), "\"say \"\"hi\"\"\"");
  EXPECT_EQ(ac::cli::csv_field("two\nlines"), "\"two\nlines\"");
  const auto parsed = ac::cli::parse_csv(ac::cli::csv_line({"a,b", "say \"hi\"", "two\nlines", ""}));
  ASSERT_EQ(parsed.size(), 1U);
  EXPECT_EQ(parsed[0], (std::vector<std::string>{"a,b", "say \"hi\"", "two\nlines", ""}));
}

TEST(CliFormat, TextIsReadable) {
  const auto inv = invoke({"--format", "text", "cover", "--set", "0,1,3", "--r", "2"});
  EXPECT_NE(inv.out.find("covering_number: 3"), std::string::npos);
}

TEST(CliFormat, JsonRoundTrip) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {"sumset", "--set", "0,1,3", "--h", "3"},
           {"cover", "--set", "0,2,5", "--r", "3"},
           {"asymptotic", "--set", "0,2,3", "--r", "3", "--sweep"},
           {"sweep", "--set", "0,1,4", "--r", "2", "--h", "2..4"},
           {"cover", "--set", "bad", "--r", "2"},
           {"verify", "--suite", "pair-equality"}}) {
    const Json j = Json::parse(invoke(args).out);
    const auto report = ac::cli::report_from_json(j);
    EXPECT_EQ(ac::cli::to_json(report), j) << args[0];
    for (const auto& [step, ms] : report.timings_ms) EXPECT_GE(ms, 0.0) << step;
  }
}

TEST(CliFormat, RejectsBadSchema) {
  Json j = Json::parse(invoke({"sumset", "--set", "0,1", "--h", "2"}).out);
  j["schema"] = 2;
  EXPECT_THROW(ac::cli::report_from_json(j), ac::ParseError);
  j["schema"] = 1;
  j["timings_ms"]["parse"] = -1.0;
  EXPECT_THROW(ac::cli::report_from_json(j), ac::ParseError);
  j.erase("timings_ms");
  EXPECT_THROW(ac::cli::report_from_json(j), ac::ParseError);
}

TEST(CliFormat, SummaryRoundTrip) {
  const Json j = Json::parse(invoke({"verify", "--suite", "pair-equality"}).out)["results"];
  EXPECT_EQ(ac::cli::to_json(ac::cli::summary_from_json(j)), j);
}

// ---- configuration precedence ----------------------------------------------

TEST(CliConfig, EnvironmentSuppliesDefaults) {
  EnvGuard fmt("APPROXCOVER_FORMAT", "csv");
  const auto inv = invoke({"sweep", "--set", "0,1", "--r", "2", "--h", "1..2"});
  EXPECT_EQ(inv.out.rfind("h,size_hA", 0), 0U) << inv.out;
}

TEST(CliConfig, FlagsBeatEnvironment) {
  EnvGuard fmt("APPROXCOVER_FORMAT", "csv");
  EnvGuard budget("APPROXCOVER_BUDGET", "2");
  const auto env_only = invoke({"cover", "--set", "0,2,3,7", "--r", "3"});
  EXPECT_EQ(env_only.code, ac::cli::kExitBudget);
  const auto flagged = invoke({"--format", "json", "--budget", "100000", "cover", "--set", "0,2,3,7", "--r", "3"});
  EXPECT_EQ(flagged.code, ac::cli::kExitOk);
  EXPECT_EQ(Json::parse(flagged.out)["inputs"]["budget"], 100000);
}

TEST(CliConfig, JobsDoNotChangeOutput) {
  const auto one = Json::parse(invoke({"--jobs", "1", "sweep", "--set", "0,2,3", "--r", "2", "--h", "1..6"}).out);
  const auto four = Json::parse(invoke({"--jobs", "4", "sweep", "--set", "0,2,3", "--r", "2", "--h", "1..6"}).out);
  auto a = stable(one), b = stable(four);
  a["inputs"].erase("jobs");
  b["inputs"].erase("jobs");
  EXPECT_EQ(a, b);
}

// ---- verify ----------------------------------------------------------------

TEST(CliVerify, BudgetRecordsRerunReproduces) {
  const auto inv = invoke({"--budget", "3", "verify", "--suite", "pair-bound", "--max-elem", "5", "--limit", "3"});
  EXPECT_EQ(inv.code, ac::cli::kExitOk);
  const auto records = Json::parse(inv.out)["results"]["budget_exceeded"];
  ASSERT_FALSE(records.empty());
  for (const auto& rec : records) {
    const auto again = invoke_line(rec["rerun"].get<std::string>());
    const auto summary = Json::parse(again.out)["results"];
    EXPECT_EQ(summary["instances_checked"].get<int>() > 0, true);
    bool found = false;
    for (const auto& other : summary["budget_exceeded"])
      found = found || (other["set"] == rec["set"] && other["params"] == rec["params"]);
    EXPECT_TRUE(found) << rec.dump();
  }
}

TEST(CliVerify, SkipAndLimitPartitionTheRun) {
  const auto whole = Json::parse(invoke({"verify", "--suite", "growth-law", "--max-elem", "6"}).out)["results"];
  std::uint64_t parts = 0;
  for (int skip = 0;; skip += 10) {
    const auto part = Json::parse(invoke({"verify", "--suite", "growth-law", "--max-elem", "6", "--skip",
                                          std::to_string(skip), "--limit", "10"})
                                      .out)["results"];
    const auto n = part["instances_checked"].get<std::uint64_t>();
    if (n == 0) break;
    parts += n;
  }
  EXPECT_EQ(parts, whole["instances_checked"].get<std::uint64_t>());
}

TEST(CliVerify, ListNamesEverySuite) {
  const auto inv = invoke({"--format", "text", "verify", "--list"});
  EXPECT_EQ(inv.code, 0);
  for (const auto& s : ac::cli::suites()) EXPECT_NE(inv.out.find(s.name), std::string::npos) << s.name;
}

TEST(CliVerify, SuitesPassAtSmallBounds) {
  for (const auto& s : ac::cli::suites()) {
    ac::cli::VerifyOptions opts;
    opts.suite = s.name;
    if (s.uses.sets) {
      opts.max_elem = std::min<std::int64_t>(s.defaults.max_elem, 6);
      opts.max_size = std::min<std::int64_t>(s.defaults.max_size, 3);
    }
    if (s.uses.trials) opts.trials = 50;
    const auto summary = ac::cli::run_suite(opts);
    EXPECT_TRUE(summary.passed()) << s.name;
    EXPECT_TRUE(summary.budget_exceeded.empty()) << s.name;
    EXPECT_GT(summary.instances_checked, 0U) << s.name;
  }
}
