#include <benchmark/benchmark.h>

#include "addchain/oracle.hpp"

namespace {

void BM_SearchOptimal(benchmark::State& state) {
  const auto e = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto r = addchain::search_optimal(e);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_SearchOptimal)->Arg(97)->Arg(1087)->Arg(3583)->Arg(12509)->Unit(benchmark::kMillisecond);

void BM_OptimalTable(benchmark::State& state) {
  const auto limit = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto t = addchain::compute_optimal_table(limit);
    benchmark::DoNotOptimize(t);
  }
}
BENCHMARK(BM_OptimalTable)->Arg(256)->Arg(512)->Unit(benchmark::kMillisecond);

}  // namespace
