// Acceptance suite: prints one PASS/FAIL line per criterion and exits
// non-zero if any criterion fails.

#include <algorithm>
#include <array>
#include <bit>
#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>

#include "addchain/baselines.hpp"
#include "addchain/bench.hpp"
#include "addchain/chain.hpp"
#include "addchain/ga.hpp"
#include "addchain/modexp.hpp"
#include "addchain/oracle.hpp"
#include "addchain/report.hpp"
#include "addchain/rng.hpp"
#include "statistics.hpp"

using namespace addchain;

namespace {

// Published reference values and pinned tolerances.
struct RangeCell {
  std::uint64_t range_max;
  std::uint64_t published;
};
constexpr std::array<RangeCell, 6> kOptimalCells = {{{512, 4924},
                                                      {1000, 10808},
                                                      {1024, 11115},
                                                      {2000, 24063},
                                                      {2048, 24731},
                                                      {4096, 54425}}};
constexpr std::uint64_t kBinary512 = 5388;
constexpr std::uint64_t kQuaternaryLow = 5175;
constexpr std::uint64_t kQuaternaryHigh = 5280;
constexpr std::uint64_t kGaLimit512 = 4950;
constexpr std::uint32_t kGaSeeds = 5;
constexpr std::uint32_t kOptimumSeeds = 40;
constexpr double kBinaryAvg32 = 46.5;
constexpr double kBinaryAvgTolerance = 1.0;
constexpr double kQuaternaryAvgMax = 44.0;
constexpr double kGaAvgMax = 43.0;
constexpr std::uint32_t kTable3Samples = 20;
constexpr ChainLength kSpecialMax = 30;
constexpr std::uint32_t kSpecialSeeds = 5;
constexpr double kChiAlpha = 0.01;

struct Verdict {
  bool pass = false;
  std::string detail;
};

struct Context {
  std::optional<std::filesystem::path> cache;
  unsigned workers = 1;
  std::uint64_t seed = 0;
  OptimalTable table;
};

Verdict oracle_exactness(Context& ctx) {
  std::ostringstream d;
  bool exact_ok = true;
  std::vector<std::string> errata;
  for (const auto& cell : kOptimalCells) {
    const std::uint64_t got = ctx.table.accumulated(cell.range_max);
    d << "[1," << cell.range_max << "]=" << got;
    if (got == cell.published) {
      d << " ";
      continue;
    }
    d << "(published " << cell.published << ") ";
    if (got > cell.published) {
      exact_ok = false;
      continue;
    }
    // The oracle is below the published value. Confirm with validated
    // witnesses that the published sum cannot be a sum of minima.
    std::uint64_t witnessed = 0;
    bool witnesses_ok = true;
    for (std::uint64_t n = 1; n <= cell.range_max; ++n) {
      const auto r = search_optimal(n);
      witnesses_ok &= r.proven && validate_chain(r.chain.values(), n).valid() &&
                      r.length() == ctx.table.length(n);
      witnessed += r.length();
    }
    if (!witnesses_ok || witnessed != got) {
      exact_ok = false;
      continue;
    }
    errata.push_back("[1," + std::to_string(cell.range_max) + "] published " +
                     std::to_string(cell.published) + " exceeds " + std::to_string(got) +
                     " achieved by validated witness chains");
  }
  for (const auto& e : errata) d << "| ERRATUM " << e << " ";
  return {exact_ok, d.str()};
}

Verdict binary_baseline(Context&) {
  std::uint64_t chains = 0, closed = 0;
  for (std::uint64_t e = 1; e <= 512; ++e) {
    chains += binary_chain(e).additions();
    closed += static_cast<std::uint64_t>(std::bit_width(e) - 1 + std::popcount(e) - 1);
  }
  std::ostringstream d;
  d << "chains=" << chains << " closed_form=" << closed << " expected=" << kBinary512;
  return {chains == kBinary512 && closed == kBinary512, d.str()};
}

Verdict quaternary_baseline(Context&) {
  std::uint64_t total = 0;
  bool valid = true;
  for (std::uint64_t e = 1; e <= 512; ++e) {
    const auto c = mary_chain(e, Radix(4));
    valid &= validate_chain(c.values(), e).valid();
    total += c.additions();
  }
  std::ostringstream d;
  d << "total=" << total << " band=[" << kQuaternaryLow << "," << kQuaternaryHigh
    << "] binary=" << kBinary512;
  return {valid && total >= kQuaternaryLow && total <= kQuaternaryHigh && total < kBinary512,
          d.str()};
}

Verdict ga_small_range(Context& ctx) {
  GaConfig cfg;
  cfg.seed = ctx.seed;
  BenchOptions opts;
  opts.workers = ctx.workers;
  std::ostringstream d;
  bool ok = true;
  d << "totals";
  for (std::uint32_t run = 0; run < kGaSeeds; ++run) {
    const auto r = accumulated(Method::gadsa(), 512, cfg, run, opts);
    ok &= r.total <= kGaLimit512;
    d << " " << r.total;
  }
  d << " limit=" << kGaLimit512 << " optimum=" << ctx.table.accumulated(512);
  return {ok, d.str()};
}

Verdict ga_single_exponent(Context& ctx) {
  std::ostringstream d;
  bool ok = true;
  for (std::uint64_t e : {43u, 97u, 15u}) {
    const ChainLength optimum = optimal_length(e);
    ChainLength best = ~ChainLength{0};
    std::uint32_t hits = 0;
    for (std::uint32_t run = 0; run < kOptimumSeeds; ++run) {
      GaConfig cfg;
      cfg.seed = derive_seed(ctx.seed, run, e);
      const auto r = evolve(e, cfg);
      best = std::min(best, r.length);
      hits += r.length == optimum;
    }
    ok &= best == optimum;
    d << "e=" << e << " optimum=" << optimum << " best=" << best << " hits=" << hits << "/"
      << kOptimumSeeds << " ";
  }
  return {ok, d.str()};
}

Verdict table3_band(Context& ctx) {
  GaConfig cfg;
  cfg.seed = ctx.seed;
  BenchOptions opts;
  opts.workers = ctx.workers;
  const std::vector<Method> methods = {Method::binary(), Method::mary(4), Method::gadsa()};
  const auto avgs = random_exponent_avg(32, kTable3Samples, methods, cfg, opts);
  const double binary = avgs[0].average, mary = avgs[1].average, ga = avgs[2].average;
  char buf[256];
  std::snprintf(buf, sizeof buf,
                "samples=%u binary=%.2f (%.1f+-%.1f) quaternary=%.2f (<=%.0f) ga=%.2f (<=%.0f)",
                kTable3Samples, binary, kBinaryAvg32, kBinaryAvgTolerance, mary,
                kQuaternaryAvgMax, ga, kGaAvgMax);
  const bool ok = std::abs(binary - kBinaryAvg32) <= kBinaryAvgTolerance &&
                  mary <= kQuaternaryAvgMax && ga <= kGaAvgMax;
  return {ok, buf};
}

Verdict table4_validation(Context& ctx) {
  GaConfig cfg;
  cfg.seed = ctx.seed;
  BenchOptions opts;
  opts.workers = ctx.workers;
  const auto results = special_exponents(cfg, kSpecialSeeds, opts);
  std::ostringstream d;
  bool ok = results.size() == 6;
  for (const auto& r : results) {
    d << r.exponent << ":";
    if (r.exponent == 3922763 || r.exponent == 2948207) {
      const bool v = r.printed_report.valid() && r.printed_length == 27;
      ok &= v;
      d << (v ? "printed-valid-27" : "printed-NOT-valid");
    } else if (r.exponent == 3704431) {
      const auto* v = r.printed_report.find(ViolationKind::NoSummandPair);
      const bool hit = v != nullptr && v->position == 12;
      ok &= hit;
      d << (hit ? "printed-rejected-NO_SUMMAND_PAIR@12" : "printed-NOT-rejected");
    } else if (r.exponent == 3243931) {
      const auto* v = r.printed_report.find(ViolationKind::NotIncreasing);
      const bool hit = v != nullptr && v->position == 8;
      ok &= hit;
      d << (hit ? "printed-rejected-NOT_INCREASING@8" : "printed-NOT-rejected");
    } else {
      d << (r.printed_report.valid() ? "printed-valid" : "printed-invalid");
    }
    const bool ga_ok = r.best_length <= kSpecialMax &&
                       validate_chain(r.best_chain, r.exponent).valid();
    ok &= ga_ok;
    d << ",ga=" << r.best_length << " ";
  }
  d << "(ga limit " << kSpecialMax << ", " << kSpecialSeeds << " seeds)";
  return {ok, d.str()};
}

bool chromosome_ok(const Chromosome& c, std::uint64_t e) {
  return validate_chain(c.values, e).valid() && replay_rules(c.rules) == c.values;
}

Verdict property_suites(Context& ctx) {
  std::ostringstream d;
  bool all = true;

  // Operator closure.
  {
    Rng rng(hash64({ctx.seed, 1}));
    GaConfig cfg;
    cfg.population_size = 6;
    int applications = 0, failures = 0;
    while (applications < 1000) {
      const std::uint64_t e = rng.between(1, 10000);
      const auto pop = initial_population(e, cfg, rng);
      for (const auto& c : pop) failures += !chromosome_ok(c, e);
      ++applications;
      for (int k = 0; k < 4 && applications < 1000; ++k) {
        const auto& a = roulette_select(pop, rng);
        const auto& b = roulette_select(pop, rng);
        ChildPair kids;
        switch (k % 3) {
          case 0: kids = crossover_single_point(a, b, e, cfg, rng); break;
          case 1: kids = crossover_two_point(a, b, e, cfg, rng); break;
          default: kids = crossover_uniform(a, b, e, cfg, rng); break;
        }
        failures += !chromosome_ok(kids.first, e) + !chromosome_ok(kids.second, e);
        failures += !chromosome_ok(mutate(kids.first, e, cfg, rng), e);
        applications += 2;
      }
    }
    all &= failures == 0;
    d << "closure=" << applications << "ops/" << failures << "bad ";
  }

  // Seed determinism: identical runs serialize identically.
  {
    GaConfig cfg;
    cfg.seed = ctx.seed + 7;
    cfg.max_generations = 40;
    cfg.early_stop_at_lower_bound = false;
    auto serialize = [&] {
      const auto r = evolve(3922763, cfg);
      Report rep;
      rep.meta.config = cfg;
      rep.rows.push_back({"GADSA", "exponent", 3922763,
                          {{"length", static_cast<double>(r.length), 0},
                           {"evaluations", static_cast<double>(r.evaluations), 0}},
                          r.best.values, {}});
      return to_json(rep);
    };
    const bool same = serialize() == serialize();
    all &= same;
    d << "determinism=" << (same ? "identical" : "DIFFERENT") << " ";
  }

  // Modexp equivalence.
  {
    Rng rng(hash64({ctx.seed, 3}));
    GaConfig cfg;
    cfg.population_size = 20;
    cfg.max_generations = 3;
    int mismatches = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      const std::uint64_t e = rng.between(1, trial % 3 == 2 ? 2000 : 100000000);
      AdditionChain chain;
      if (trial % 3 == 0) {
        chain = binary_chain(e);
      } else if (trial % 3 == 1) {
        cfg.seed = rng.next();
        chain = evolve(e, cfg).best.chain();
      } else {
        chain = optimal_chain(e);
      }
      BigUint n = 2, p = 0;
      for (int i = 0; i <= trial % 4; ++i) {
        n = (n << 64) | BigUint(rng.next());
        p = (p << 64) | BigUint(rng.next());
      }
      const auto r = execute(chain, ModContext(p, n));
      mismatches += r.value != reference_modexp(p, e, n) ||
                    r.multiplications != chain.additions();
    }
    all &= mismatches == 0;
    d << "modexp=1000/" << mismatches << "bad ";
  }

  // Roulette chi-square on five members.
  {
    auto chain_of = [](std::uint64_t e) {
      Chromosome c = seed_prefix();
      while (c.last() < e) {
        c.rules.push_back({RuleKind::Add, GeneOp::Random, 0});
        c.values.push_back(c.last() + 1);
      }
      return c;
    };
    const std::vector<Chromosome> pop = {chain_of(4), chain_of(5), chain_of(6), chain_of(7),
                                         chain_of(10)};
    const RouletteWheel wheel(pop);
    std::array<std::uint64_t, 5> counts{};
    Rng rng(hash64({ctx.seed, 4}));
    for (int i = 0; i < 100000; ++i) ++counts[wheel.spin(rng)];
    std::array<double, 5> p{};
    double total = 0;
    for (std::size_t i = 0; i < 5; ++i) total += static_cast<double>(wheel.weights()[i]);
    for (std::size_t i = 0; i < 5; ++i) p[i] = static_cast<double>(wheel.weights()[i]) / total;
    const double stat = testing_support::chi_square(counts, p);
    const double crit = testing_support::chi_square_critical(4, kChiAlpha);
    all &= stat < crit;
    char buf[96];
    std::snprintf(buf, sizeof buf, "roulette_chi2=%.2f<%.2f ", stat, crit);
    d << buf;
  }

  // Oracle self-consistency.
  {
    const auto& t = ctx.table;
    int bad = 0;
    for (std::uint64_t n = 1; n <= 4096; ++n) {
      bad += t.length(n) < lower_bound(n) || t.length(n) > binary_length(n);
      if (2 * n <= 4096) bad += t.length(2 * n) > t.length(n) + 1;
    }
    all &= bad == 0;
    d << "oracle_consistency(n<=4096)=" << bad << "bad";
  }
  return {all, d.str()};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  Context ctx;
  std::string cache;
  ctx.workers = std::max(1u, std::thread::hardware_concurrency());
  app.add_option("--cache", cache, "oracle table cache for [1,4096]");
  app.add_option("--workers", ctx.workers)->check(CLI::PositiveNumber);
  app.add_option("--seed", ctx.seed, "master seed for every stochastic criterion");
  CLI11_PARSE(app, argc, argv);
  if (!cache.empty()) ctx.cache = cache;

  const auto t0 = std::chrono::steady_clock::now();
  ctx.table = optimal_table(4096, ctx.cache, ctx.workers);

  const std::vector<std::pair<const char*, std::function<Verdict(Context&)>>> criteria = {
      {"oracle accumulated lengths vs published optimal column", oracle_exactness},
      {"binary accumulated over [1,512] = 5388", binary_baseline},
      {"quaternary accumulated over [1,512] within band", quaternary_baseline},
      {"GA accumulated over [1,512] <= 4950 for each of 5 seeds", ga_small_range},
      {"GA reaches the optimum for 43, 97, 15 within 40 seeds", ga_single_exponent},
      {"average lengths over 20 random 32-bit exponents", table3_band},
      {"special exponents: printed chains and GA <= 30", table4_validation},
      {"property suites", property_suites},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = criteria[i].second(ctx);
    } catch (const std::exception& e) {
      v = {false, std::string("exception: ") + e.what()};
    }
    failed += !v.pass;
    std::cout << (v.pass ? "PASS" : "FAIL") << " " << (i + 1) << " " << criteria[i].first
              << " :: " << v.detail << std::endl;
    std::cerr << "  criterion " << (i + 1) << " took "
              << std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count()
              << " s\n";
  }
  std::cerr << "total "
            << std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()
            << " s\n";
  std::cout << (failed == 0 ? "ALL PASS" : std::to_string(failed) + " FAILED") << std::endl;
  return failed == 0 ? 0 : 1;
}
