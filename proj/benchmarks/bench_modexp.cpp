#include <benchmark/benchmark.h>

#include "addchain/baselines.hpp"
#include "addchain/modexp.hpp"
#include "addchain/oracle.hpp"

namespace {

const addchain::ModContext& context() {
  static const addchain::ModContext ctx(
      addchain::parse_decimal("123456789123456789123456789"),
      (addchain::BigUint(1) << 521) - 1);
  return ctx;
}

void BM_ExecuteBinary(benchmark::State& state) {
  const auto chain = addchain::binary_chain(12509);
  for (auto _ : state) {
    auto r = addchain::execute(chain, context());
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ExecuteBinary);

void BM_ExecuteOptimal(benchmark::State& state) {
  const auto chain = addchain::optimal_chain(12509);
  for (auto _ : state) {
    auto r = addchain::execute(chain, context());
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ExecuteOptimal);

void BM_ReferenceModexp(benchmark::State& state) {
  for (auto _ : state) {
    auto r = addchain::reference_modexp(context().base(), 12509, context().modulus());
    benchmark::DoNotOptimize(r);
  }
}
BENCHMARK(BM_ReferenceModexp);

}  // namespace
