#include <cstdint>
#include <random>
#include <vector>

#include <benchmark/benchmark.h>

#include "approxcover/covering.hpp"
#include "approxcover/int_set.hpp"
#include "approxcover/sumsets.hpp"

namespace ac = approxcover;

namespace {

ac::IntSet random_set(std::size_t size, std::int64_t span, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::int64_t> elem(0, span);
  std::vector<std::int64_t> v{0, span};
  while (v.size() < size) v.push_back(elem(rng));
  return ac::IntSet::from_elements(v);
}

void BM_PairwiseSumset(benchmark::State& state) {
  const auto kernel = static_cast<ac::SumsetKernel>(state.range(0));
  const auto size = static_cast<std::size_t>(state.range(1));
  const auto a = random_set(size, static_cast<std::int64_t>(size) * 8, 1);
  const auto b = random_set(size, static_cast<std::int64_t>(size) * 8, 2);
  for (auto _ : state) benchmark::DoNotOptimize(ac::pairwise_sumset(a, b, kernel));
  state.SetComplexityN(state.range(1));
}
BENCHMARK(BM_PairwiseSumset)
    ->ArgNames({"kernel", "size"})
    ->ArgsProduct({{static_cast<int>(ac::SumsetKernel::kAuto), static_cast<int>(ac::SumsetKernel::kShiftOr),
                    static_cast<int>(ac::SumsetKernel::kRunMerge), static_cast<int>(ac::SumsetKernel::kPairwise)},
                   {16, 128, 1024}});

void BM_Hfold(benchmark::State& state) {
  const auto a = random_set(10, 100, 3);
  for (auto _ : state) benchmark::DoNotOptimize(ac::hfold(a, state.range(0)));
}
BENCHMARK(BM_Hfold)->RangeMultiplier(10)->Range(10, 100'000)->Unit(benchmark::kMicrosecond);

void BM_HfoldSparse(benchmark::State& state) {
  const auto a = ac::IntSet::from_elements({0, 1000, 1'000'003});
  for (auto _ : state) benchmark::DoNotOptimize(ac::hfold(a, state.range(0)));
}
BENCHMARK(BM_HfoldSparse)->DenseRange(2, 8, 2)->Unit(benchmark::kMicrosecond);

void BM_CoveringNumber(benchmark::State& state) {
  const auto h = state.range(0);
  const auto ha = ac::hfold(ac::IntSet::from_elements({0, 2, 3, 7}), h);
  for (auto _ : state) benchmark::DoNotOptimize(ac::covering_number(ha, 3));
}
BENCHMARK(BM_CoveringNumber)->DenseRange(1, 6)->Unit(benchmark::kMillisecond);

void BM_CoveringNumberAP(benchmark::State& state) {
  std::vector<std::int64_t> v;
  for (std::int64_t i = 0; i < state.range(0); ++i) v.push_back(i);
  const auto a = ac::IntSet::from_elements(v);
  for (auto _ : state) benchmark::DoNotOptimize(ac::covering_number(a, 6));
}
BENCHMARK(BM_CoveringNumberAP)->DenseRange(2, 8, 2)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
