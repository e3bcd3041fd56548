#include <benchmark/benchmark.h>

#include <vector>

#include "gapwise/bounds.hpp"
#include "gapwise/counting.hpp"
#include "gapwise/extremal.hpp"

using namespace gapwise;

static void BM_CountPlus(benchmark::State& state) {
  const u64 x = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(count_plus(Builtin::Tau, x, 1).count);
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations() * x));
}
BENCHMARK(BM_CountPlus)->RangeMultiplier(10)->Range(10'000, 10'000'000)->Unit(benchmark::kMillisecond);

static void BM_CountBatchAllModes(benchmark::State& state) {
  const u64 x = static_cast<u64>(state.range(0));
  std::vector<GapQuery> queries;
  for (u64 l : {1, 2, 3, 5, 10, 100})
    for (GapMode m : {GapMode::Plus, GapMode::Minus, GapMode::Full, GapMode::Reduced, GapMode::DivRestricted})
      queries.push_back({Builtin::Phi, x, l, m});
  for (auto _ : state) benchmark::DoNotOptimize(count_batch(queries).size());
}
BENCHMARK(BM_CountBatchAllModes)->Arg(1'000'000)->Arg(10'000'000)->Unit(benchmark::kMillisecond);

static void BM_Correlation(benchmark::State& state) {
  const u64 x = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(correlation_ratio(Builtin::Sigma, x, 1).ratio);
}
BENCHMARK(BM_Correlation)->Arg(1'000'000)->Unit(benchmark::kMillisecond);

static void BM_CheckExact(benchmark::State& state) {
  const u64 x = static_cast<u64>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(check_exact(x).size());
}
BENCHMARK(BM_CheckExact)->Arg(1'000'000)->Unit(benchmark::kMillisecond);
