#include <benchmark/benchmark.h>

#include <vector>

#include "gapwise/arith.hpp"

using namespace gapwise;

static void BM_SieveFill(benchmark::State& state) {
  const auto f = static_cast<Builtin>(state.range(0));
  const u64 start = 100'000'000;
  const std::size_t span = static_cast<std::size_t>(state.range(1));
  const Sieve sieve(start + span);
  std::vector<u64> out(span);
  for (auto _ : state) {
    sieve.fill(f, start, out);
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(static_cast<int64_t>(state.iterations()) * static_cast<int64_t>(span));
  state.SetLabel(std::string(builtin_name(f)));
}
BENCHMARK(BM_SieveFill)->ArgsProduct({{0, 1, 2, 3, 4}, {1 << 12, 1 << 16, 1 << 20}});

static void BM_EvalNaive(benchmark::State& state) {
  u64 n = 1'000'000'007;
  for (auto _ : state) benchmark::DoNotOptimize(eval_naive(Builtin::Sigma, n++));
}
BENCHMARK(BM_EvalNaive);
