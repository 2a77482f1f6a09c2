#include "approxcover/cli/app.hpp"

#include <chrono>
#include <ostream>

#include <CLI11.hpp>

#include "approxcover/asymptotic.hpp"
#include "approxcover/error.hpp"
#include "approxcover/sumsets.hpp"

namespace approxcover::cli {

namespace {

class Stopwatch {
 public:
  explicit Stopwatch(RunReport& report) : report_(report) {}
  void lap(const char* step) {
    const auto now = std::chrono::steady_clock::now();
    report_.timings_ms.emplace_back(step,
                                    std::chrono::duration<double, std::milli>(now - last_).count());
    last_ = now;
  }

 private:
  RunReport& report_;
  std::chrono::steady_clock::time_point last_ = std::chrono::steady_clock::now();
};

std::int64_t parse_single(std::string_view text, const char* name) {
  const IndexRange range = parse_index_range(text);
  if (range.first != range.last) {
    throw ParseError(std::string("--") + name + " takes a single integer, got '" +
                     std::string(text) + "'");
  }
  return range.first;
}

// Runs body, converting library errors into a failed report.
template <class Body>
RunReport guarded(std::string command, Json inputs, Body&& body) {
  RunReport report;
  report.command = std::move(command);
  report.inputs = std::move(inputs);
  Stopwatch watch(report);
  try {
    body(report, watch);
  } catch (const BudgetExceededError& e) {
    report.results = Json::object();
    report.fail(error_code_name(e.code()), e.what());
    report.results["nodes"] = e.nodes();
  } catch (const Error& e) {
    report.results = Json::object();
    report.fail(error_code_name(e.code()), e.what());
  }
  return report;
}

Json cover_payload(const IntSet& a, std::int64_t r, const CoverResult& res) {
  Json out;
  out["r"] = r;
  out["covering_number"] = res.covering_number;
  out["witness"] = element_array(res.witness);
  out["lower_bound"] = lower_bound(a, r);
  out["certificate_ok"] = is_approximate_group(a, r, res.witness);
  out["nodes_explored"] = res.nodes_explored;
  out["optimal"] = res.optimal;
  return out;
}

Json sweep_rows(const std::vector<SweepRow>& rows) {
  Json out = Json::array();
  for (const SweepRow& row : rows) {
    Json j;
    j["h"] = row.h;
    j["size_hA"] = row.size_hA;
    j["is_ap"] = row.is_ap;
    j["covering_number"] = row.cover ? Json(row.cover->covering_number) : Json();
    j["witness"] = row.cover ? element_array(row.cover->witness) : Json();
    j["error"] = row.error.empty() ? Json() : Json(row.error);
    out.push_back(std::move(j));
  }
  return out;
}

Json solver_inputs(const RunOptions& options) {
  return Json{{"budget", options.solver.node_budget}, {"jobs", options.jobs}};
}

}  // namespace

RunReport cmd_sumset(std::string_view set, std::string_view h) {
  Json inputs{{"set", std::string(set)}, {"h", std::string(h)}};
  return guarded("sumset", std::move(inputs), [&](RunReport& report, Stopwatch& watch) {
    const IntSet a = parse_set_literal(set);
    const std::int64_t folds = parse_single(h, "h");
    report.inputs = Json{{"set", format_set_literal(a)}, {"h", folds}};
    watch.lap("parse");
    const IntSet ha = hfold(a, folds);
    const auto ap = detect_ap(ha);
    watch.lap("compute");
    Json res;
    res["h"] = folds;
    const Json payload = set_payload(ha);
    for (const auto& [key, value] : payload.items()) res[key] = value;
    res["is_ap"] = ap.has_value();
    res["ap_first"] = ap ? Json(ap->first) : Json();
    res["ap_diff"] = ap ? Json(ap->diff) : Json();
    report.results = std::move(res);
  });
}

RunReport cmd_cover(std::string_view set, std::string_view r, const RunOptions& options) {
  Json inputs{{"set", std::string(set)}, {"r", std::string(r)}};
  return guarded("cover", std::move(inputs), [&](RunReport& report, Stopwatch& watch) {
    const IntSet a = parse_set_literal(set);
    const std::int64_t rr = parse_single(r, "r");
    report.inputs = Json{{"set", format_set_literal(a)}, {"r", rr}};
    report.inputs.update(solver_inputs(options));
    watch.lap("parse");
    const CoverResult res = covering_number(a, rr, options.solver);
    watch.lap("compute");
    report.results = cover_payload(a, rr, res);
  });
}

RunReport cmd_asymptotic(std::string_view set, std::string_view r,
                         const std::optional<std::string>& window, bool with_sweep,
                         const RunOptions& options) {
  Json inputs{{"set", std::string(set)}, {"r", std::string(r)}};
  if (window) inputs["window"] = *window;
  return guarded("asymptotic", std::move(inputs), [&](RunReport& report, Stopwatch& watch) {
    const IntSet a = parse_set_literal(set);
    const std::int64_t rr = parse_single(r, "r");
    if (rr < 1) throw InvalidFoldError("asymptotic: r must be >= 1");
    std::optional<IndexRange> win;
    if (window) win = parse_index_range(*window);
    report.inputs = Json{{"set", format_set_literal(a)}, {"r", rr}};
    report.inputs["window"] = win ? Json(format_index_range(*win)) : Json();
    report.inputs["sweep"] = with_sweep;
    report.inputs.update(solver_inputs(options));
    watch.lap("parse");

    const NormalForm nf = normalize(a);
    const AsymptoticReport rep = is_asymptotic_ap(a, win);
    Json res;
    res["r"] = rr;
    res["normal_form"] = Json{{"elements", element_array(nf.normalized)},
                              {"offset", nf.offset},
                              {"scale", nf.scale}};
    res["condition_holds"] = rep.condition_holds;
    res["asymptotic_covering_number"] = rep.asymptotic_covering_number(rr);
    res["top"] = rep.top;
    res["theoretical_threshold"] = rep.theoretical_threshold;
    res["empirical_threshold"] =
        rep.empirical_threshold ? Json(*rep.empirical_threshold) : Json();
    res["window"] = format_index_range(rep.window_checked);
    res["window_consistent"] = rep.window_consistent;
    Json constants{{"h0", nullptr}, {"c", nullptr}, {"dprime", nullptr}, {"error", nullptr}};
    try {
      const StructureConstants sc = structure_constants(a, rep.window_checked);
      constants["h0"] = sc.h0;
      constants["c"] = sc.c;
      constants["dprime"] = sc.dprime;
    } catch (const NoStabilizationError& e) {
      constants["error"] = e.what();
    }
    res["structure_constants"] = std::move(constants);
    watch.lap("analyze");
    if (with_sweep) {
      res["rows"] = sweep_rows(sweep(a, rr, rep.window_checked, SweepOptions{options.solver, options.jobs}));
      watch.lap("sweep");
    }
    report.results = std::move(res);
  });
}

RunReport cmd_sweep(std::string_view set, std::string_view r, std::string_view h,
                    const RunOptions& options) {
  Json inputs{{"set", std::string(set)}, {"r", std::string(r)}, {"h", std::string(h)}};
  return guarded("sweep", std::move(inputs), [&](RunReport& report, Stopwatch& watch) {
    const IntSet a = parse_set_literal(set);
    const std::int64_t rr = parse_single(r, "r");
    const IndexRange window = parse_index_range(h);
    report.inputs = Json{{"set", format_set_literal(a)}, {"r", rr}, {"h", format_index_range(window)}};
    report.inputs.update(solver_inputs(options));
    watch.lap("parse");
    const auto rows = sweep(a, rr, window, SweepOptions{options.solver, options.jobs});
    watch.lap("compute");
    report.results = Json{{"r", rr}, {"window", format_index_range(window)}, {"rows", sweep_rows(rows)}};
  });
}

RunReport cmd_verify(const VerifyOptions& options) {
  return guarded("verify", Json{{"suite", options.suite}}, [&](RunReport& report, Stopwatch& watch) {
    const SuiteInfo* info = find_suite(options.suite);
    if (!info) throw ParseError("verify: unknown suite '" + options.suite + "' (see --list)");
    const SuiteBounds b = resolve_bounds(*info, options);
    Json inputs{{"suite", info->name}};
    if (info->uses.sets) {
      inputs["max_elem"] = b.max_elem;
      inputs["max_size"] = b.max_size;
    }
    if (info->uses.r) inputs["r"] = format_index_range(b.r);
    if (info->uses.h) inputs["h"] = format_index_range(b.h);
    if (info->uses.trials) {
      inputs["trials"] = b.trials;
      inputs["seed"] = options.seed;
    }
    inputs["skip"] = options.skip;
    inputs["limit"] = options.limit ? Json(*options.limit) : Json();
    inputs["budget"] = options.solver.node_budget;
    inputs["jobs"] = options.jobs;
    report.inputs = std::move(inputs);
    watch.lap("parse");
    report.results = to_json(run_suite(options));
    watch.lap("compute");
  });
}

int exit_code(const RunReport& report) {
  if (report.status == Status::kError) {
    return report.results.value("code", "") == error_code_name(ErrorCode::kBudgetExceeded)
               ? kExitBudget
               : kExitUsage;
  }
  if (report.command == "verify") {
    return report.results.at("failures").empty() ? kExitOk : kExitVerifyFailed;
  }
  if (report.results.contains("rows")) {
    for (const Json& row : report.results.at("rows")) {
      if (!row.at("error").is_null()) return kExitBudget;
    }
  }
  return kExitOk;
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact and asymptotic r-covering numbers of finite integer sets", "approxcover"};
  app.require_subcommand(1);
  // -h would clash with --h (fold count).
  app.set_help_flag("--help", "Print this help message and exit");

  std::string format = "json";
  std::uint64_t budget = SolverOptions{}.node_budget;
  unsigned jobs = 1;
  app.add_option("--format", format, "json, csv or text")
      ->envname("APPROXCOVER_FORMAT")
      ->check(CLI::IsMember({"json", "csv", "text"}));
  app.add_option("--budget", budget, "search-node budget per covering-number call")
      ->envname("APPROXCOVER_BUDGET")
      ->check(CLI::PositiveNumber);
  app.add_option("--jobs", jobs, "worker threads for sweep and verify")
      ->envname("APPROXCOVER_JOBS")
      ->check(CLI::PositiveNumber);

  std::string set;
  std::string r = "2";
  std::string h = "1";
  std::optional<std::string> window;
  bool with_sweep = false;

  auto* sumset = app.add_subcommand("sumset", "h-fold sumset hA");
  sumset->add_option("--set", set, "set literal, e.g. \"0,1,3\"")->required();
  sumset->add_option("--h", h, "fold count")->required();

  auto* cover = app.add_subcommand("cover", "exact r-covering number with witness");
  cover->add_option("--set", set, "set literal")->required();
  cover->add_option("--r", r, "r >= 1")->required();

  auto* asym = app.add_subcommand("asymptotic", "endpoint-gap condition and asymptotic covering number");
  asym->add_option("--set", set, "set literal")->required();
  asym->add_option("--r", r, "r >= 1")->capture_default_str();
  asym->add_option("--window", window, "h range a..b for the AP scan (default 1..max(b+4,8))");
  asym->add_flag("--sweep", with_sweep, "also compute C_r(hA) across the window");

  auto* sw = app.add_subcommand("sweep", "C_r(hA) for each h in a range");
  sw->add_option("--set", set, "set literal")->required();
  sw->add_option("--r", r, "r >= 1")->required();
  sw->add_option("--h", h, "h range a..b")->required();

  VerifyOptions verify;
  std::optional<std::string> verify_r;
  std::optional<std::string> verify_h;
  bool list = false;
  auto* ver = app.add_subcommand("verify", "run a verification suite over enumerated instances");
  ver->add_option("--suite", verify.suite, "suite name or alias");
  ver->add_flag("--list", list, "list suites with their aliases and defaults");
  ver->add_option("--max-elem", verify.max_elem, "largest element of enumerated sets");
  ver->add_option("--max-size", verify.max_size, "largest size of enumerated sets");
  ver->add_option("--r", verify_r, "r range a..b");
  ver->add_option("--h", verify_h, "h range a..b");
  ver->add_option("--trials", verify.trials, "random instances for randomized suites");
  ver->add_option("--seed", verify.seed, "seed for randomized suites")->envname("APPROXCOVER_SEED");
  ver->add_option("--skip", verify.skip, "instances to skip");
  ver->add_option("--limit", verify.limit, "instances to run after skipping");

  for (auto* sub : {sumset, cover, asym, sw, ver}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    app.exit(e, out, err);
    return kExitUsage;
  }

  const Format fmt = parse_format(format);
  const RunOptions options{SolverOptions{budget}, jobs};
  RunReport report;
  if (sumset->parsed()) {
    report = cmd_sumset(set, h);
  } else if (cover->parsed()) {
    report = cmd_cover(set, r, options);
  } else if (asym->parsed()) {
    report = cmd_asymptotic(set, r, window, with_sweep, options);
  } else if (sw->parsed()) {
    report = cmd_sweep(set, r, h, options);
  } else {
    if (list) {
      for (const SuiteInfo& info : suites()) {
        out << info.name << (info.alias.empty() ? "" : " (" + info.alias + ")") << "\n  "
            << info.description << '\n';
      }
      return kExitOk;
    }
    if (verify.suite.empty()) {
      err << "verify: --suite is required (see --list)\n";
      return kExitUsage;
    }
    verify.solver.node_budget = budget;
    verify.jobs = jobs;
    try {
      if (verify_r) verify.r = parse_index_range(*verify_r);
      if (verify_h) verify.h = parse_index_range(*verify_h);
      report = cmd_verify(verify);
    } catch (const Error& e) {
      report = RunReport{};
      report.command = "verify";
      report.inputs = Json{{"suite", verify.suite}};
      report.fail(error_code_name(e.code()), e.what());
    }
  }

  render(report, fmt, out);
  if (report.status == Status::kError) err << "error: " << report.error_message() << '\n';
  const int code = exit_code(report);
  if (report.command == "verify" && report.status == Status::kOk) {
    const auto& res = report.results;
    err << "verify " << res.at("suite").get<std::string>() << ": "
        << res.at("instances_checked").get<std::uint64_t>() << " checks, "
        << res.at("failures").size() << " failures, " << res.at("budget_exceeded").size()
        << " budget exhaustions\n";
  }
  return code;
}

}  // namespace approxcover::cli
