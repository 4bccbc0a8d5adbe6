#include <doctest.h>

#include <algorithm>
#include <bit>
#include <set>

#include "addchain/baselines.hpp"
#include "addchain/bench.hpp"
#include "addchain/error.hpp"
#include "addchain/rng.hpp"

using namespace addchain;

namespace {

GaConfig quick_config(std::uint64_t seed = 0) {
  GaConfig cfg;
  cfg.seed = seed;
  cfg.max_generations = 30;
  cfg.population_size = 60;
  return cfg;
}

TableScale tiny_scale() {
  TableScale s = table_scale("ci");
  s.ranges = {24, 32};
  s.runs = 3;
  s.max_generations = 10;
  s.bit_sizes = {12};
  s.samples = 4;
  s.special_seeds = 1;
  return s;
}

}  // namespace

TEST_CASE("method names") {
  CHECK(Method::gadsa().name() == "GADSA");
  CHECK(Method::binary().name() == "BINARY");
  CHECK(Method::mary(4).name() == "MARY4");
  CHECK(Method::mary(8).name() == "MARY8");
  CHECK(Method::oracle().name() == "ORACLE");
  CHECK_FALSE(Method::gadsa().deterministic());
  CHECK(Method::oracle().deterministic());
}

TEST_CASE("derive_seed") {
  CHECK(derive_seed(1, 2, 3) == hash64({1, 2, 3}));
  std::set<std::uint64_t> seeds;
  for (std::uint64_t r = 0; r < 40; ++r) {
    for (std::uint64_t e = 1; e <= 512; ++e) seeds.insert(derive_seed(0, r, e));
  }
  CHECK(seeds.size() == 40 * 512);
}

TEST_CASE("deterministic accumulated totals") {
  const GaConfig cfg;
  CHECK(accumulated(Method::binary(), 512, cfg).total == 5388);
  CHECK(accumulated(Method::mary(4), 512, cfg).total == 5226);
  CHECK(accumulated(Method::oracle(), 512, cfg).total == 4924);
  const auto r = accumulated(Method::binary(), 100, cfg);
  CHECK(r.per_exponent.size() == 100);
  std::uint64_t sum = 0;
  for (auto l : r.per_exponent) sum += l;
  CHECK(sum == r.total);
  CHECK(r.range_max == 100);
  CHECK_THROWS_AS(accumulated(Method::binary(), 0, cfg), Error);
}

TEST_CASE("accumulated is monotone in P") {
  const GaConfig cfg = quick_config(5);
  for (const Method& m : {Method::binary(), Method::mary(4), Method::oracle(), Method::gadsa()}) {
    std::uint64_t previous = 0;
    for (std::uint64_t p : {16u, 32u, 64u}) {
      const auto total = accumulated(m, p, cfg).total;
      CHECK(total >= previous);
      previous = total;
    }
  }
}

TEST_CASE("GA accumulated sits between oracle and binary") {
  const GaConfig cfg;
  for (std::uint64_t p : {128u}) {
    const auto oracle = accumulated(Method::oracle(), p, cfg).total;
    const auto binary = accumulated(Method::binary(), p, cfg).total;
    for (std::uint32_t run = 0; run < 5; ++run) {
      const auto ga = accumulated(Method::gadsa(), p, cfg, run);
      CHECK(ga.total >= oracle);
      CHECK(ga.total <= binary);
      CHECK(ga.seeds.size() == p);
      CHECK(ga.seeds[96] == derive_seed(cfg.seed, run, 97));
    }
  }
}

TEST_CASE("worker count does not change results") {
  const GaConfig cfg = quick_config(9);
  BenchOptions one, four;
  four.workers = 4;
  const auto a = accumulated(Method::gadsa(), 60, cfg, 2, one);
  const auto b = accumulated(Method::gadsa(), 60, cfg, 2, four);
  CHECK(a.per_exponent == b.per_exponent);
  CHECK(a.total == b.total);
}

TEST_CASE("summarize") {
  const std::vector<std::uint64_t> one = {42};
  const auto s1 = summarize(one);
  CHECK(s1.best == 42);
  CHECK(s1.worst == 42);
  CHECK(s1.median == 42.0);
  CHECK(s1.average == 42.0);
  CHECK(s1.runs == 1);

  const std::vector<std::uint64_t> four = {10, 13, 11, 12};
  const auto s4 = summarize(four);
  CHECK(s4.best == 10);
  CHECK(s4.worst == 13);
  CHECK(s4.median == doctest::Approx(11.5));
  CHECK(s4.average == doctest::Approx(11.5));
  CHECK(s4.totals == four);

  const std::vector<std::uint64_t> odd = {5, 1, 9};
  CHECK(summarize(odd).median == 5.0);
  CHECK_THROWS_AS(summarize(std::span<const std::uint64_t>{}), Error);
}

TEST_CASE("run_stats") {
  const GaConfig cfg = quick_config(3);
  const auto oracle = run_stats(Method::oracle(), 64, 4, cfg);
  CHECK(oracle.best == oracle.worst);
  CHECK(oracle.runs == 4);
  const auto ga = run_stats(Method::gadsa(), 64, 4, cfg);
  CHECK(ga.runs == 4);
  CHECK(ga.best <= ga.median);
  CHECK(ga.median <= ga.worst);
  CHECK(ga.best <= ga.average);
  CHECK(ga.average <= ga.worst);
  CHECK(ga.best >= oracle.best);
  CHECK_THROWS_AS(run_stats(Method::gadsa(), 64, 0, cfg), Error);
}

TEST_CASE("random exponents") {
  const auto two = random_exponents(2, 200, 1);
  CHECK(two.size() == 200);
  for (auto e : two) CHECK((e == 2 || e == 3));
  CHECK(std::count(two.begin(), two.end(), 2u) > 0);
  CHECK(std::count(two.begin(), two.end(), 3u) > 0);
  for (auto e : random_exponents(64, 50, 2)) CHECK(std::bit_width(e) == 64);
  for (auto e : random_exponents(17, 50, 2)) CHECK(std::bit_width(e) == 17);
  CHECK(random_exponents(20, 10, 7) == random_exponents(20, 10, 7));
  CHECK_THROWS_AS(random_exponents(1, 10, 0), Error);
  CHECK_THROWS_AS(random_exponents(65, 10, 0), Error);
  CHECK_THROWS_AS(random_exponents(8, 0, 0), Error);
}

TEST_CASE("random exponent averages") {
  GaConfig cfg = quick_config(11);
  const std::vector<Method> methods = {Method::binary(), Method::mary(4), Method::gadsa()};
  const auto two = random_exponent_avg(2, 40, methods, cfg);
  REQUIRE(two.size() == 3);
  const auto exps = random_exponents(2, 40, cfg.seed);
  double expected = 0.0;
  for (auto e : exps) expected += e == 2 ? 1.0 : 2.0;
  CHECK(two[0].average == doctest::Approx(expected / 40));
  CHECK(two[0].lengths.size() == 40);

  const auto wide = random_exponent_avg(24, 10, methods, cfg);
  CHECK(wide[2].average <= wide[0].average);
  CHECK(wide[1].average <= wide[0].average);
}

TEST_CASE("special exponent table") {
  const auto table = special_exponent_table();
  REQUIRE(table.size() == 6);
  for (const auto& s : table) CHECK(s.reported_length == 27);
  const auto results = special_exponents(quick_config(1), 1);
  REQUIRE(results.size() == 6);
  for (const auto& r : results) {
    CHECK(validate_chain(r.best_chain, r.exponent).valid());
    CHECK(r.best_length == r.best_chain.size() - 1);
    CHECK(r.per_seed.size() == 1);
    if (r.exponent == 3922763 || r.exponent == 2948207) {
      CHECK(r.printed_report.valid());
      CHECK(r.printed_length == 27);
    }
    if (r.exponent == 3704431) CHECK(r.printed_report.has(ViolationKind::NoSummandPair));
    if (r.exponent == 3243931) CHECK(r.printed_report.has(ViolationKind::NotIncreasing));
  }
}

TEST_CASE("table scales") {
  const auto ci = table_scale("ci");
  CHECK(ci.ranges == std::vector<std::uint64_t>{128});
  CHECK(ci.runs == 5);
  CHECK(ci.max_generations == 100);
  const auto paper = table_scale("paper");
  CHECK(paper.ranges == std::vector<std::uint64_t>{512, 1000, 1024, 2000, 2048, 4096});
  CHECK(paper.runs == 40);
  CHECK(paper.max_generations == 300);
  CHECK_THROWS_AS(table_scale("huge"), Error);
}

TEST_CASE("table reproductions") {
  const TableScale scale = tiny_scale();
  const GaConfig cfg = quick_config(21);

  const auto t1 = reproduce_table1(scale, cfg);
  REQUIRE(t1.rows.size() == 8);
  CHECK(t1.rows[0].method == "ORACLE");
  CHECK(t1.rows[1].method == "GADSA");
  CHECK(t1.rows[2].method == "MARY4");
  CHECK(t1.rows[3].method == "BINARY");
  CHECK(t1.meta.scale == "ci");
  CHECK(t1.meta.config.max_generations == 10);
  CHECK(to_csv(t1).rfind("method,range_max,total\n", 0) == 0);
  for (const auto& row : t1.rows) CHECK(row.metric("total") != nullptr);
  CHECK(report_from_json(to_json(t1)) == t1);

  const auto t2 = reproduce_table2(scale, cfg);
  REQUIRE(t2.rows.size() == 2);
  for (const char* name : {"best", "average", "median", "worst", "runs"}) {
    CHECK(t2.rows[0].metric(name) != nullptr);
  }
  CHECK(t2.rows[0].metric("runs")->value == 3);

  const auto t3 = reproduce_table3(scale, cfg);
  REQUIRE(t3.rows.size() == 3);
  CHECK(t3.rows[0].scope == "bits");
  CHECK(t3.rows[0].metric("samples")->value == 4);

  const auto t4 = reproduce_table4(scale, cfg);
  std::size_t printed = 0, ga = 0;
  for (const auto& row : t4.rows) {
    printed += row.method == "PRINTED";
    ga += row.method == "GADSA";
  }
  CHECK(printed == 6);
  CHECK(ga == 6);
}
