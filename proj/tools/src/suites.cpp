#include "approxcover/cli/suites.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <random>

#include "approxcover/asymptotic.hpp"
#include "approxcover/detail/checked.hpp"
#include "approxcover/detail/parallel.hpp"
#include "approxcover/enumerate.hpp"
#include "approxcover/error.hpp"
#include "approxcover/sumsets.hpp"

namespace approxcover::cli {

namespace {

constexpr SuiteUses kSets{true, false, false, false};
constexpr SuiteUses kSetsR{true, true, false, false};
constexpr SuiteUses kSetsH{true, false, true, false};
constexpr SuiteUses kRandomR{false, true, false, true};
constexpr SuiteUses kRandomH{false, false, true, true};

}  // namespace

const std::vector<SuiteInfo>& suites() {
  static const std::vector<SuiteInfo> table = {
      {"growth-law", "lemma-2.1",
       "|hA| = hm - h + 1 for progressions, |hA| >= hm otherwise", kSetsH,
       {12, 5, {1, 1}, {1, 6}, 0}},
      {"ap-lower-bound", "prop-2.2",
       "lower_bound <= C_r, and C_r >= r off progressions", kSetsR,
       {10, 4, {1, 4}, {1, 1}, 0}},
      {"ap-closed-form", "prop-2.3",
       "C_r of an m-term progression is ceil((rm - r + 1) / m)", kSetsR,
       {7, 8, {2, 6}, {1, 1}, 0}},
      {"pair-bound", "theorem-2.4",
       "C_r >= ceil((r + 1) / 2), equality exactly on pairs, progressions at "
       "r = 2 and 3-term progressions at r = 4",
       kSetsR, {10, 4, {2, 5}, {1, 1}, 0}},
      {"asymptotic-ap", "theorem-3.1",
       "endpoint-gap condition iff hA is an interval for h in [max(1, b - 2), "
       "b + 4]; otherwise no hA in [1, b + 4] is a progression",
       kSets, {12, 5, {1, 1}, {1, 1}, 0}},
      {"normal-form-ap", "lemma-3.2",
       "hA is a progression iff h times the normal form is", kRandomH,
       {0, 0, {1, 1}, {1, 6}, 500}},
      {"asymptotic-lower-bound", "theorem-4.1",
       "no r - 1 translates of hA cover r(hA) for h > (r - 2) / (m - 1), h <= max(b + 4, 8)",
       kSetsR, {8, 4, {2, 4}, {1, 1}, 0}},
      {"affine-invariance", "lemma-4.2",
       "C_r(dA + t) = C_r(A) and the closed form agrees", kRandomR,
       {0, 0, {2, 3}, {1, 1}, 500}},
      {"asymptotic-tail", "corollary-1.3",
       "C_r(hA) settles on r with the endpoint-gap condition and on r + 1 "
       "without it, over a constant tail of at least 7 folds",
       kSetsR, {8, 4, {2, 3}, {1, 1}, 0}},
      {"pair-equality", "example-1", "C_r({0, k}) = ceil((r + 1) / 2)",
       kSetsR, {10, 2, {2, 12}, {1, 1}, 0}},
      {"spread-sets", "example-2",
       "a1 = 1, a(i+1) = r a(i) + 1 gives |rA| = binomial(m + r - 1, r)",
       kSetsR, {0, 4, {2, 4}, {1, 1}, 0}},
      {"monotonicity", "", "C_r(A) is nondecreasing in r", kSetsR,
       {8, 4, {1, 5}, {1, 1}, 0}},
      {"certificates", "",
       "every witness covers rA and has covering_number elements", kRandomR,
       {0, 0, {1, 4}, {1, 1}, 1000}},
  };
  return table;
}

const SuiteInfo* find_suite(std::string_view name) {
  for (const auto& info : suites()) {
    if (info.name == name || (!info.alias.empty() && info.alias == name)) return &info;
  }
  return nullptr;
}

SuiteBounds resolve_bounds(const SuiteInfo& info, const VerifyOptions& o) {
  SuiteBounds b = info.defaults;
  if (o.max_elem) b.max_elem = *o.max_elem;
  if (o.max_size) b.max_size = *o.max_size;
  if (o.r) b.r = *o.r;
  if (o.h) b.h = *o.h;
  if (o.trials) b.trials = *o.trials;
  if (info.uses.r && b.r.first < 1) throw InvalidFoldError("verify: r must be >= 1");
  if (info.uses.h && b.h.first < 1) throw InvalidFoldError("verify: h must be >= 1");
  if (info.uses.r && b.r.count() == 0) throw InvalidSizeError("verify: empty r range");
  if (info.uses.h && b.h.count() == 0) throw InvalidSizeError("verify: empty h range");
  if (info.uses.sets && (b.max_size < 0 || b.max_elem < 0)) {
    throw InvalidSizeError("verify: bounds must be nonnegative");
  }
  return b;
}

namespace {

struct Instance {
  IntSet set;
  Json params = Json::object();
};

// Per-instance result, merged in instance order.
struct Sink {
  std::uint64_t checks = 0;
  std::vector<FailureRecord> failures;
  std::vector<BudgetRecord> budgets;
  std::map<std::string, std::int64_t> stats;

  void fail(const IntSet& set, Json params, Json expected, Json got) {
    failures.push_back(FailureRecord{format_set_literal(set), std::move(params),
                                     std::move(expected), std::move(got), {}});
  }
  void budget(const IntSet& set, Json params, std::uint64_t nodes) {
    budgets.push_back(BudgetRecord{format_set_literal(set), std::move(params), nodes, {}});
  }
};

struct Context {
  SuiteBounds bounds;
  SolverOptions solver;
};

using Check = std::function<void(const Instance&, const Context&, Sink&)>;

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return (a + b - 1) / b; }

Json with(Json params, const char* key, std::int64_t value) {
  params[key] = value;
  return params;
}

// Runs fn, turning solver budget exhaustion into a budget record.
template <class Fn>
void guarded(Sink& sink, const IntSet& set, const Json& params, Fn&& fn) {
  try {
    fn();
  } catch (const BudgetExceededError& e) {
    sink.budget(set, params, e.nodes());
  }
}

std::vector<Instance> normal_form_instances(const SuiteBounds& b) {
  std::vector<Instance> out;
  for (auto& s : normal_form_sets(b.max_elem, b.max_size)) out.push_back(Instance{std::move(s), {}});
  return out;
}

IntSet random_set(std::mt19937_64& rng, std::int64_t min_size, std::int64_t max_size,
                  std::int64_t lo, std::int64_t hi) {
  std::uniform_int_distribution<std::int64_t> size(min_size, max_size);
  std::uniform_int_distribution<std::int64_t> elem(lo, hi);
  const std::int64_t target = std::min(size(rng), hi - lo + 1);
  std::vector<std::int64_t> v;
  while (static_cast<std::int64_t>(v.size()) < target) {
    const auto x = elem(rng);
    if (std::find(v.begin(), v.end(), x) == v.end()) v.push_back(x);
  }
  return IntSet::from_elements(std::move(v));
}

std::int64_t draw(std::mt19937_64& rng, std::int64_t lo, std::int64_t hi) {
  return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

// ---- instance generators ----

std::vector<Instance> ap_instances(const SuiteBounds& b) {
  std::vector<Instance> out;
  for (auto& s : normal_form_sets(b.max_elem, b.max_size)) {
    if (detect_ap(s)) out.push_back(Instance{std::move(s), {}});
  }
  return out;
}

std::vector<Instance> pair_instances(const SuiteBounds& b) {
  std::vector<Instance> out;
  for (std::int64_t k = 1; k <= b.max_elem; ++k) out.push_back(Instance{IntSet{0, k}, {}});
  return out;
}

std::vector<Instance> spread_instances(const SuiteBounds& b) {
  std::vector<Instance> out;
  for (std::int64_t m = 2; m <= b.max_size; ++m) {
    for (std::int64_t r = b.r.first; r <= b.r.last; ++r) {
      std::vector<std::int64_t> v{1};
      while (static_cast<std::int64_t>(v.size()) < m) {
        v.push_back(detail::checked_add(detail::checked_mul(r, v.back(), "spread set"), 1,
                                        "spread set"));
      }
      out.push_back(Instance{IntSet::from_elements(std::move(v)), Json{{"r", r}}});
    }
  }
  return out;
}

std::vector<Instance> normal_form_ap_instances(const SuiteBounds& b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  for (std::uint64_t i = 0; i < b.trials; ++i) {
    const IntSet s = random_set(rng, 2, 5, 0, 20);
    const auto d = draw(rng, 1, 7);
    const auto t = draw(rng, -50, 50);
    const auto h = draw(rng, b.h.first, b.h.last);
    out.push_back(Instance{translate(dilate(s, d), t), Json{{"h", h}}});
  }
  return out;
}

std::vector<Instance> affine_instances(const SuiteBounds& b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  for (std::uint64_t i = 0; i < b.trials; ++i) {
    IntSet s = random_set(rng, 2, 4, 0, 10);
    const auto d = draw(rng, 1, 7);
    const auto t = draw(rng, -50, 50);
    const auto r = draw(rng, b.r.first, b.r.last);
    out.push_back(Instance{std::move(s), Json{{"d", d}, {"t", t}, {"r", r}}});
  }
  return out;
}

std::vector<Instance> certificate_instances(const SuiteBounds& b, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Instance> out;
  for (std::uint64_t i = 0; i < b.trials; ++i) {
    IntSet s = random_set(rng, 1, 5, -20, 20);
    const auto r = draw(rng, b.r.first, b.r.last);
    out.push_back(Instance{std::move(s), Json{{"r", r}}});
  }
  return out;
}

// ---- checks ----

void check_growth(const Instance& in, const Context& ctx, Sink& sink) {
  const auto m = static_cast<std::int64_t>(in.set.size());
  const bool ap = detect_ap(in.set).has_value();
  sink.stats[ap ? "progressions" : "non_progressions"] += 1;
  const auto folds = hfold_prefix(in.set, ctx.bounds.h.last);
  for (std::int64_t h = ctx.bounds.h.first; h <= ctx.bounds.h.last; ++h) {
    ++sink.checks;
    const auto size = static_cast<std::int64_t>(folds[static_cast<std::size_t>(h - 1)].size());
    const Json params{{"h", h}};
    if (ap && size != h * m - h + 1) {
      sink.fail(in.set, params, Json{{"size", h * m - h + 1}}, Json{{"size", size}});
    } else if (!ap && size < h * m) {
      sink.fail(in.set, params, Json{{"size_at_least", h * m}}, Json{{"size", size}});
    }
    const SizeBound bound = hfold_size_bound(in.set, h);
    const std::int64_t want = ap ? h * m - h + 1 : h * m;
    if (bound.is_ap != ap || bound.lower_bound != want) {
      sink.fail(in.set, params, Json{{"lower_bound", want}, {"is_ap", ap}},
                Json{{"lower_bound", bound.lower_bound}, {"is_ap", bound.is_ap}});
    }
  }
}

void check_lower_bound(const Instance& in, const Context& ctx, Sink& sink) {
  const auto m = static_cast<std::int64_t>(in.set.size());
  const bool ap = detect_ap(in.set).has_value();
  for (std::int64_t r = ctx.bounds.r.first; r <= ctx.bounds.r.last; ++r) {
    ++sink.checks;
    const Json params{{"r", r}};
    guarded(sink, in.set, params, [&] {
      const std::int64_t counting = ceil_div(r * m - r + 1, m);
      const std::int64_t want = ap ? counting : std::max(r, counting);
      const std::int64_t lb = lower_bound(in.set, r);
      const std::int64_t c = covering_number(in.set, r, ctx.solver).covering_number;
      if (lb != want) sink.fail(in.set, params, Json{{"lower_bound", want}}, Json{{"lower_bound", lb}});
      if (c < lb) {
        sink.fail(in.set, params, Json{{"covering_number_at_least", lb}}, Json{{"covering_number", c}});
      }
      if (!ap && c < r) {
        sink.fail(in.set, params, Json{{"covering_number_at_least", r}}, Json{{"covering_number", c}});
      }
      if (c == lb) sink.stats["tight"] += 1;
    });
  }
}

void check_ap_closed_form(const Instance& in, const Context& ctx, Sink& sink) {
  const auto m = static_cast<std::int64_t>(in.set.size());
  for (std::int64_t r = ctx.bounds.r.first; r <= ctx.bounds.r.last; ++r) {
    ++sink.checks;
    const Json params{{"r", r}};
    guarded(sink, in.set, params, [&] {
      const std::int64_t want = ceil_div(r * m - r + 1, m);
      const std::int64_t c = covering_number(in.set, r, ctx.solver).covering_number;
      if (c != want) sink.fail(in.set, params, Json{{"covering_number", want}}, Json{{"covering_number", c}});
      if (ap_covering_number(m, r) != want) {
        sink.fail(in.set, params, Json{{"ap_covering_number", want}},
                  Json{{"ap_covering_number", ap_covering_number(m, r)}});
      }
    });
  }
}

void check_pair_bound(const Instance& in, const Context& ctx, Sink& sink) {
  const auto m = static_cast<std::int64_t>(in.set.size());
  const bool ap = detect_ap(in.set).has_value();
  for (std::int64_t r = ctx.bounds.r.first; r <= ctx.bounds.r.last; ++r) {
    ++sink.checks;
    const Json params{{"r", r}};
    guarded(sink, in.set, params, [&] {
      const std::int64_t bound = ceil_div(r + 1, 2);
      const std::int64_t c = covering_number(in.set, r, ctx.solver).covering_number;
      const bool predicted = m == 2 || (ap && r == 2) || (ap && m == 3 && r == 4);
      if (c < bound) {
        sink.fail(in.set, params, Json{{"covering_number_at_least", bound}}, Json{{"covering_number", c}});
      } else if ((c == bound) != predicted) {
        sink.fail(in.set, params, Json{{"equality", predicted}},
                  Json{{"equality", c == bound}, {"covering_number", c}});
      }
      if (c == bound) {
        sink.stats["equality_cases"] += 1;
        if (m == 2) {
          sink.stats["equality_pairs"] += 1;
        } else if (r == 2) {
          sink.stats["equality_progressions_r2"] += 1;
        } else {
          sink.stats["equality_3_term_r4"] += 1;
        }
      }
    });
  }
}

void check_asymptotic_ap(const Instance& in, const Context&, Sink& sink) {
  ++sink.checks;
  const std::int64_t b = in.set.max();
  const bool cond = endpoint_gap_condition(in.set);
  sink.stats[cond ? "condition_sets" : "other_sets"] += 1;
  const std::int64_t last = b + 4;
  const auto folds = hfold_prefix(in.set, last);
  for (std::int64_t h = 1; h <= last; ++h) {
    const IntSet& f = folds[static_cast<std::size_t>(h - 1)];
    const Json params{{"h", h}};
    if (cond && h >= std::max<std::int64_t>(1, b - 2) && !(f.is_interval() && f.max() == h * b)) {
      sink.fail(in.set, params, Json{{"interval", format_index_range({0, h * b})}},
                Json{{"size", f.size()}, {"is_interval", f.is_interval()}});
    }
    if (!cond && detect_ap(f)) {
      sink.fail(in.set, params, Json{{"is_ap", false}}, Json{{"is_ap", true}});
    }
  }
  const AsymptoticReport rep = is_asymptotic_ap(in.set, IndexRange{1, last});
  if (rep.condition_holds != cond || !rep.window_consistent) {
    sink.fail(in.set, Json::object(), Json{{"condition_holds", cond}, {"window_consistent", true}},
              Json{{"condition_holds", rep.condition_holds},
                   {"window_consistent", rep.window_consistent}});
  }
}

void check_normal_form_ap(const Instance& in, const Context&, Sink& sink) {
  ++sink.checks;
  const auto h = in.params.at("h").get<std::int64_t>();
  const NormalForm nf = normalize(in.set);
  if (nf.restore() != in.set) {
    sink.fail(in.set, in.params, Json{{"restore", format_set_literal(in.set)}},
              Json{{"restore", format_set_literal(nf.restore())}});
  }
  const bool a_ap = detect_ap(hfold(in.set, h)).has_value();
  const bool b_ap = detect_ap(hfold(nf.normalized, h)).has_value();
  if (a_ap != b_ap) {
    sink.fail(in.set, in.params, Json{{"is_ap", b_ap}}, Json{{"is_ap", a_ap}});
  }
  if (a_ap) sink.stats["progressions"] += 1;
}

void check_asymptotic_lower_bound(const Instance& in, const Context& ctx, Sink& sink) {
  const auto m = static_cast<std::int64_t>(in.set.size());
  const std::int64_t last = std::max<std::int64_t>(in.set.max() + 4, 8);
  for (std::int64_t r = ctx.bounds.r.first; r <= ctx.bounds.r.last; ++r) {
    for (std::int64_t h = 1; h <= last; ++h) {
      if (r >= 2 && h * (m - 1) <= r - 2) continue;
      ++sink.checks;
      const Json params{{"r", r}, {"h", h}};
      guarded(sink, in.set, params, [&] {
        // C_r(hA) >= r iff no r - 1 translates cover.
        const auto cover = find_cover(hfold(in.set, h), r, r - 1, ctx.solver);
        if (cover) {
          sink.fail(in.set, params, Json{{"covering_number_at_least", r}},
                    Json{{"cover", element_array(*cover)}});
        }
      });
    }
  }
}

void check_affine(const Instance& in, const Context& ctx, Sink& sink) {
  ++sink.checks;
  const auto d = in.params.at("d").get<std::int64_t>();
  const auto t = in.params.at("t").get<std::int64_t>();
  const auto r = in.params.at("r").get<std::int64_t>();
  const IntSet image = translate(dilate(in.set, d), t);
  guarded(sink, in.set, in.params, [&] {
    const auto base = covering_number(in.set, r, ctx.solver).covering_number;
    const auto moved = covering_number(image, r, ctx.solver).covering_number;
    if (base != moved) {
      sink.fail(in.set, in.params, Json{{"covering_number", base}}, Json{{"covering_number", moved}});
    }
  });
  const auto base = asymptotic_covering_number(in.set, r);
  const auto moved = asymptotic_covering_number(image, r);
  if (base != moved) {
    sink.fail(in.set, in.params, Json{{"asymptotic_covering_number", base}},
              Json{{"asymptotic_covering_number", moved}});
  }
}

void check_tail(const Instance& in, const Context& ctx, Sink& sink) {
  const bool cond = endpoint_gap_condition(in.set);
  const auto m = static_cast<std::int64_t>(in.set.size());
  for (std::int64_t r = ctx.bounds.r.first; r <= ctx.bounds.r.last; ++r) {
    ++sink.checks;
    const Json params{{"r", r}};
    const std::int64_t want = r == 1 ? 1 : (cond ? r : r + 1);
    guarded(sink, in.set, params, [&] {
      TailScanOptions opts;
      opts.sweep.solver = ctx.solver;
      StabilizationReport rep;
      try {
        rep = scan_tail(in.set, r, opts);
      } catch (const NoStabilizationError& e) {
        sink.fail(in.set, params, Json{{"tail_value", want}}, Json{{"error", e.what()}});
        return;
      }
      const std::int64_t length = rep.rows.back().h - rep.tail_start + 1;
      if (rep.tail_value != want || length < 7) {
        sink.fail(in.set, params, Json{{"tail_value", want}, {"tail_length_at_least", 7}},
                  Json{{"tail_value", rep.tail_value}, {"tail_start", rep.tail_start},
                       {"tail_length", length}});
      }
      for (const SweepRow& row : rep.rows) {
        if (r >= 2 && row.h * (m - 1) > r - 2 && row.cover->covering_number < r) {
          sink.fail(in.set, with(params, "h", row.h), Json{{"covering_number_at_least", r}},
                    Json{{"covering_number", row.cover->covering_number}});
        }
      }
      sink.stats[cond ? "condition_runs" : "other_runs"] += 1;
      sink.stats["max_tail_start"] = std::max(sink.stats["max_tail_start"], rep.tail_start);
    });
  }
}

// X = {(r - 1 - j) a1 + j a2 : j = 0, 2, 4, ...} plus j = r - 1 when r is
// even; each translate covers the sums with j and j + 1 copies of a2.
IntSet pair_construction(const IntSet& pair, std::int64_t r) {
  const std::int64_t a1 = pair.min();
  const std::int64_t a2 = pair.max();
  std::vector<std::int64_t> x;
  for (std::int64_t j = 0; j <= r - 1; j += 2) x.push_back((r - 1 - j) * a1 + j * a2);
  if (r % 2 == 0) x.push_back(a2 * (r - 1));
  return IntSet::from_elements(std::move(x));
}

void check_pair_equality(const Instance& in, const Context& ctx, Sink& sink) {
  for (std::int64_t r = ctx.bounds.r.first; r <= ctx.bounds.r.last; ++r) {
    ++sink.checks;
    const Json params{{"r", r}};
    const std::int64_t want = ceil_div(r + 1, 2);
    guarded(sink, in.set, params, [&] {
      const std::int64_t c = covering_number(in.set, r, ctx.solver).covering_number;
      if (c != want) sink.fail(in.set, params, Json{{"covering_number", want}}, Json{{"covering_number", c}});
    });
    const IntSet x = pair_construction(in.set, r);
    if (static_cast<std::int64_t>(x.size()) != want || !is_approximate_group(in.set, r, x)) {
      sink.fail(in.set, params, Json{{"construction_covers", true}, {"size", want}},
                Json{{"construction_covers", is_approximate_group(in.set, r, x)},
                     {"size", x.size()}, {"construction", element_array(x)}});
    }
  }
}

void check_spread(const Instance& in, const Context& ctx, Sink& sink) {
  ++sink.checks;
  const auto r = in.params.at("r").get<std::int64_t>();
  const auto m = static_cast<std::int64_t>(in.set.size());
  std::int64_t binom = 1;
  for (std::int64_t i = 1; i <= r; ++i) binom = binom * (m - 1 + i) / i;
  const auto size = static_cast<std::int64_t>(hfold(in.set, r).size());
  if (size != binom) sink.fail(in.set, in.params, Json{{"size_rA", binom}}, Json{{"size_rA", size}});
  guarded(sink, in.set, in.params, [&] {
    const std::int64_t c = covering_number(in.set, r, ctx.solver).covering_number;
    if (c < ceil_div(binom, m)) {
      sink.fail(in.set, in.params, Json{{"covering_number_at_least", ceil_div(binom, m)}},
                Json{{"covering_number", c}});
    }
  });
}

void check_monotonicity(const Instance& in, const Context& ctx, Sink& sink) {
  std::optional<std::int64_t> prev;
  for (std::int64_t r = ctx.bounds.r.first; r <= ctx.bounds.r.last; ++r) {
    ++sink.checks;
    const Json params{{"r", r}};
    std::optional<std::int64_t> c;
    guarded(sink, in.set, params,
            [&] { c = covering_number(in.set, r, ctx.solver).covering_number; });
    if (prev && c && *c < *prev) {
      sink.fail(in.set, params, Json{{"covering_number_at_least", *prev}}, Json{{"covering_number", *c}});
    }
    if (prev && c && *c > *prev) sink.stats["increases"] += 1;
    prev = c;
  }
}

void check_certificate(const Instance& in, const Context& ctx, Sink& sink) {
  ++sink.checks;
  const auto r = in.params.at("r").get<std::int64_t>();
  guarded(sink, in.set, in.params, [&] {
    const CoverResult res = covering_number(in.set, r, ctx.solver);
    const bool covers = is_approximate_group(in.set, r, res.witness);
    const bool sized = static_cast<std::int64_t>(res.witness.size()) == res.covering_number;
    const bool bounded = lower_bound(in.set, r) <= res.covering_number;
    if (!covers || !sized || !bounded || !res.optimal) {
      sink.fail(in.set, in.params,
                Json{{"certificate_ok", true}, {"witness_size", res.covering_number}},
                Json{{"certificate_ok", covers}, {"witness_size", res.witness.size()},
                     {"witness", element_array(res.witness)},
                     {"lower_bound_ok", bounded}, {"optimal", res.optimal}});
    }
  });
}

struct SuiteImpl {
  std::function<std::vector<Instance>(const SuiteBounds&, std::uint64_t seed)> instances;
  Check check;
};

const std::map<std::string, SuiteImpl>& impls() {
  const auto sets = [](const SuiteBounds& b, std::uint64_t) { return normal_form_instances(b); };
  static const std::map<std::string, SuiteImpl> table = {
      {"growth-law", {sets, check_growth}},
      {"ap-lower-bound", {sets, check_lower_bound}},
      {"ap-closed-form", {[](const SuiteBounds& b, std::uint64_t) { return ap_instances(b); },
                          check_ap_closed_form}},
      {"pair-bound", {sets, check_pair_bound}},
      {"asymptotic-ap", {sets, check_asymptotic_ap}},
      {"normal-form-ap", {normal_form_ap_instances, check_normal_form_ap}},
      {"asymptotic-lower-bound", {sets, check_asymptotic_lower_bound}},
      {"affine-invariance", {affine_instances, check_affine}},
      {"asymptotic-tail", {sets, check_tail}},
      {"pair-equality", {[](const SuiteBounds& b, std::uint64_t) { return pair_instances(b); },
                         check_pair_equality}},
      {"spread-sets", {[](const SuiteBounds& b, std::uint64_t) { return spread_instances(b); },
                       check_spread}},
      {"monotonicity", {sets, check_monotonicity}},
      {"certificates", {certificate_instances, check_certificate}},
  };
  return table;
}

std::string rerun_command(const SuiteInfo& info, const SuiteBounds& b, const VerifyOptions& o,
                          std::uint64_t index) {
  std::string cmd = "approxcover verify --suite " + info.name;
  if (info.uses.sets) {
    cmd += " --max-elem " + std::to_string(b.max_elem) + " --max-size " + std::to_string(b.max_size);
  }
  if (info.uses.r) cmd += " --r " + format_index_range(b.r);
  if (info.uses.h) cmd += " --h " + format_index_range(b.h);
  if (info.uses.trials) {
    cmd += " --trials " + std::to_string(b.trials) + " --seed " + std::to_string(o.seed);
  }
  if (o.solver.node_budget != SolverOptions{}.node_budget) {
    cmd += " --budget " + std::to_string(o.solver.node_budget);
  }
  cmd += " --skip " + std::to_string(index) + " --limit 1";
  return cmd;
}

}  // namespace

VerificationSummary run_suite(const VerifyOptions& options) {
  const SuiteInfo* info = find_suite(options.suite);
  if (!info) throw ParseError("verify: unknown suite '" + options.suite + "'");
  const auto start = std::chrono::steady_clock::now();
  const SuiteBounds bounds = resolve_bounds(*info, options);
  const SuiteImpl& impl = impls().at(info->name);

  std::vector<Instance> all = impl.instances(bounds, options.seed);
  const std::uint64_t first = std::min<std::uint64_t>(options.skip, all.size());
  std::uint64_t count = all.size() - first;
  if (options.limit) count = std::min(count, *options.limit);

  const Context ctx{bounds, options.solver};
  const auto sinks = detail::parallel_map(count, options.jobs, [&](std::size_t i) {
    Sink sink;
    impl.check(all[first + i], ctx, sink);
    return sink;
  });

  VerificationSummary summary;
  summary.suite = info->name;
  std::map<std::string, std::int64_t> stats;
  for (std::size_t i = 0; i < sinks.size(); ++i) {
    const Sink& sink = sinks[i];
    const std::string rerun = rerun_command(*info, bounds, options, first + i);
    summary.instances_checked += sink.checks;
    for (FailureRecord f : sink.failures) {
      f.rerun = rerun;
      summary.failures.push_back(std::move(f));
    }
    for (BudgetRecord b : sink.budgets) {
      b.rerun = rerun;
      summary.budget_exceeded.push_back(std::move(b));
    }
    for (const auto& [key, value] : sink.stats) {
      stats[key] = key.rfind("max_", 0) == 0 ? std::max(stats[key], value) : stats[key] + value;
    }
  }
  summary.stats = Json::object();
  summary.stats["instances"] = count;
  for (const auto& [key, value] : stats) summary.stats[key] = value;
  summary.elapsed_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return summary;
}

}  // namespace approxcover::cli
