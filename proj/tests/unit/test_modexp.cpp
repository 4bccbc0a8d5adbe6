#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "addchain/baselines.hpp"
#include "addchain/error.hpp"
#include "addchain/ga.hpp"
#include "addchain/modexp.hpp"
#include "addchain/oracle.hpp"
#include "addchain/rng.hpp"

using namespace addchain;
using Values = std::vector<std::uint64_t>;

namespace {

BigUint random_big(Rng& rng, int limbs) {
  BigUint v = 0;
  for (int i = 0; i < limbs; ++i) v = (v << 64) | BigUint(rng.next());
  return v;
}

}  // namespace

TEST_CASE("identity chain") {
  const auto r = execute(AdditionChain(), ModContext(7, 13));
  CHECK(r.value == 7);
  CHECK(r.multiplications == 0);
}

TEST_CASE("the ten-element chain for 97") {
  const Values chain = {1, 2, 4, 6, 10, 20, 24, 48, 96, 97};
  const ModContext ctx(2, 1000003);
  const auto r = execute(chain, 97, ctx);
  CHECK(r.multiplications == 9);
  CHECK(r.value == reference_modexp(2, 97, 1000003));
  CHECK(r.value == 156639);
}

TEST_CASE("oracle chain for 43") {
  Rng rng(43);
  const auto chain = optimal_chain(43);
  for (int i = 0; i < 50; ++i) {
    const BigUint n = random_big(rng, 2) + 2;
    const BigUint p = random_big(rng, 3);
    const auto r = execute(chain, ModContext(p, n));
    CHECK(r.multiplications == 7);
    CHECK(r.value == reference_modexp(p, 43, n));
  }
}

TEST_CASE("reference_modexp") {
  CHECK(reference_modexp(5, 0, 7) == 1);
  CHECK(reference_modexp(5, 0, 2) == 1);
  CHECK(reference_modexp(12345, 1, 1000) == 345);
  CHECK(reference_modexp(3, 97, 1000007) == 580164);
  CHECK(reference_modexp(0, 5, 11) == 0);
}

TEST_CASE("execute agrees with reference on 1000 random triples") {
  Rng rng(1000);
  GaConfig cfg;
  cfg.population_size = 30;
  cfg.max_generations = 5;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::uint64_t e = rng.between(1, trial % 4 == 3 ? 400 : 1000000);
    AdditionChain chain;
    switch (trial % 4) {
      case 0: chain = binary_chain(e); break;
      case 1: chain = mary_chain(e, Radix(4)); break;
      case 2: {
        cfg.seed = rng.next();
        chain = evolve(e, cfg).best.chain();
        break;
      }
      default: chain = optimal_chain(e); break;
    }
    const BigUint n = random_big(rng, 1 + trial % 4) + 2;
    const BigUint p = random_big(rng, 1 + trial % 5);
    const auto r = execute(chain, ModContext(p, n));
    REQUIRE(r.value == reference_modexp(p, e, n));
    REQUIRE(r.value == boost::multiprecision::powm(p % n, BigUint(e), n));
    REQUIRE(r.multiplications == chain.additions());
  }
}

TEST_CASE("binary chain costs binary_length multiplications") {
  for (std::uint64_t e = 1; e < 3000; e += 7) {
    CHECK(execute(binary_chain(e), ModContext(3, 101)).multiplications == binary_length(e));
  }
}

TEST_CASE("shorter chains cost fewer multiplications") {
  const ModContext ctx(3, 1000003);
  const std::uint64_t e = 12509;
  const auto oracle = execute(optimal_chain(e), ctx);
  const auto binary = execute(binary_chain(e), ctx);
  CHECK(oracle.value == binary.value);
  CHECK(oracle.multiplications < binary.multiplications);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(ModContext(3, 1), Error);
  CHECK_THROWS_AS(ModContext(-3, 7), Error);
  try {
    execute(Values{1, 2, 5}, 5, ModContext(3, 7));
    FAIL("expected InvalidChain");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::InvalidChain);
  }
  CHECK_THROWS_AS(execute(Values{1, 2, 4}, 8, ModContext(3, 7)), Error);
  CHECK(parse_decimal("123456789012345678901234567890") ==
        BigUint("123456789012345678901234567890"));
  CHECK_THROWS_AS(parse_decimal("12a"), Error);
  CHECK_THROWS_AS(parse_decimal(""), Error);
  CHECK_THROWS_AS(parse_decimal("-5"), Error);
}

TEST_CASE("base is reduced before execution") {
  const ModContext ctx(1000, 7);
  CHECK(ctx.base() == 1000 % 7);
  CHECK(execute(binary_chain(10), ctx).value == reference_modexp(1000, 10, 7));
}
