#include <benchmark/benchmark.h>

#include "addchain/baselines.hpp"

namespace {

void BM_BinaryChain(benchmark::State& state) {
  std::uint64_t e = 0x9e3779b97f4a7c15ull;
  for (auto _ : state) {
    auto c = addchain::binary_chain(e);
    benchmark::DoNotOptimize(c);
    e = e * 6364136223846793005ull + 1442695040888963407ull;
    e |= 1;
  }
}
BENCHMARK(BM_BinaryChain);

void BM_MaryChain(benchmark::State& state) {
  const addchain::Radix radix(static_cast<std::uint32_t>(state.range(0)));
  std::uint64_t e = 0x9e3779b97f4a7c15ull;
  for (auto _ : state) {
    auto c = addchain::mary_chain(e, radix);
    benchmark::DoNotOptimize(c);
    e = e * 6364136223846793005ull + 1442695040888963407ull;
    e |= 1;
  }
}
BENCHMARK(BM_MaryChain)->Arg(4)->Arg(16);

}  // namespace
