#include <benchmark/benchmark.h>

#include "addchain/ga.hpp"

namespace {

void BM_Evolve(benchmark::State& state) {
  addchain::GaConfig cfg;
  cfg.max_generations = static_cast<std::uint32_t>(state.range(1));
  cfg.early_stop_at_lower_bound = false;
  const auto e = static_cast<std::uint64_t>(state.range(0));
  for (auto _ : state) {
    auto r = addchain::evolve(e, cfg);
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_Evolve)->Args({97, 20})->Args({3922763, 20})->Args({4000000000, 20})
    ->Unit(benchmark::kMillisecond);

void BM_InitialPopulation(benchmark::State& state) {
  addchain::GaConfig cfg;
  addchain::Rng rng(1);
  for (auto _ : state) {
    auto pop = addchain::initial_population(3922763, cfg, rng);
    benchmark::DoNotOptimize(pop);
  }
}
BENCHMARK(BM_InitialPopulation);

void BM_Crossover(benchmark::State& state) {
  addchain::GaConfig cfg;
  cfg.crossover_rate = 1.0;
  addchain::Rng rng(2);
  const auto pop = addchain::initial_population(3922763, cfg, rng);
  std::size_t i = 0;
  for (auto _ : state) {
    auto kids = addchain::crossover(pop[i % pop.size()], pop[(i + 1) % pop.size()],
                                    3922763, cfg, rng);
    benchmark::DoNotOptimize(kids);
    ++i;
  }
}
BENCHMARK(BM_Crossover);

void BM_Mutate(benchmark::State& state) {
  addchain::GaConfig cfg;
  addchain::Rng rng(3);
  const auto pop = addchain::initial_population(3922763, cfg, rng);
  std::size_t i = 0;
  for (auto _ : state) {
    auto m = addchain::mutate(pop[i++ % pop.size()], 3922763, cfg, rng);
    benchmark::DoNotOptimize(m);
  }
}
BENCHMARK(BM_Mutate);

}  // namespace
