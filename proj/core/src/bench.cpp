#include "addchain/bench.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "addchain/baselines.hpp"
#include "addchain/error.hpp"
#include "addchain/rng.hpp"
#include "parallel.hpp"

namespace addchain {
namespace {

constexpr std::uint64_t kSpecialOracleBudget = 2'000'000;

double round2(double v) { return std::round(v * 100.0) / 100.0; }

Metric count(std::string name, std::uint64_t v) {
  return {std::move(name), static_cast<double>(v), 0};
}

Metric average(std::string name, double v) {
  return {std::move(name), round2(v), 2};
}

ReportMeta meta_for(const TableScale& scale, const GaConfig& cfg) {
  ReportMeta meta;
  meta.seed = cfg.seed;
  meta.config = cfg;
  meta.scale = scale.name;
  return meta;
}

GaConfig scaled(const TableScale& scale, GaConfig cfg) {
  if (scale.max_generations != 0) cfg.max_generations = scale.max_generations;
  return cfg;
}

void require_exponent(std::uint64_t e) {
  if (e == 0) throw Error(ErrorKind::InvalidArgument, "exponent must be >= 1");
}

const SpecialExponent kSpecial[] = {
    {3704431,
     {1, 2, 4, 5, 9, 18, 36, 72, 144, 288, 576, 1157, 2314, 4628, 9256, 18512,
      37024, 74048, 148096, 296192, 592384, 1184768, 1185349, 2370698, 3556047,
      3704143, 3704431},
     27},
    {3922763,
     {1, 2, 3, 6, 12, 24, 26, 52, 104, 208, 416, 832, 1664, 3328, 3331, 6659,
      9990, 19980, 39960, 79920, 159840, 163171, 326342, 652684, 1305368,
      1958052, 3916104, 3922763},
     27},
    {2948207,
     {1, 2, 3, 4, 7, 14, 28, 29, 58, 116, 232, 239, 478, 956, 1912, 3824, 3853,
      7677, 15354, 30708, 61416, 122832, 245664, 491328, 982656, 1965312,
      2947968, 2948207},
     27},
    {3093839,
     {1, 2, 3, 5, 10, 20, 30, 60, 120, 150, 151, 302, 604, 1208, 2416, 4832,
      9664, 19328, 38656, 77312, 154624, 309248, 618496, 1236992, 2473984,
      3092480, 3093688, 3093839},
     27},
    {3243931,
     {1, 2, 4, 8, 16, 32, 64, 27, 128, 256, 258, 514, 515, 1029, 2058, 4116,
      8232, 16464, 32928, 65856, 66371, 132227, 198083, 396166, 792332,
      1584664, 3169328, 3235699, 3243931},
     27},
    {3325439,
     {1, 2, 4, 8, 16, 17, 33, 66, 132, 264, 528, 1056, 2112, 4224, 4241, 8482,
      16964, 33928, 67856, 135712, 271424, 271457, 542914, 1085828, 1085861,
      2171722, 3257583, 3325439},
     27},
};

}  // namespace

std::string Method::name() const {
  switch (kind) {
    case Kind::Gadsa: return "GADSA";
    case Kind::Binary: return "BINARY";
    case Kind::Mary: return "MARY" + std::to_string(radix);
    case Kind::Oracle: return "ORACLE";
  }
  return "UNKNOWN";
}

std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t run,
                          std::uint64_t exponent) noexcept {
  return hash64({master_seed, run, exponent});
}

ChainLength method_length(const Method& method, std::uint64_t exponent,
                          const GaConfig& cfg, const BenchOptions& opts) {
  require_exponent(exponent);
  switch (method.kind) {
    case Method::Kind::Binary: return binary_length(exponent);
    case Method::Kind::Mary: return mary_chain(exponent, Radix(method.radix)).additions();
    case Method::Kind::Oracle: return search_optimal(exponent, opts.oracle_budget).length();
    case Method::Kind::Gadsa: return evolve(exponent, cfg).length;
  }
  return 0;
}

AccumulatedResult accumulated(const Method& method, std::uint64_t range_max,
                              const GaConfig& cfg, std::uint32_t run,
                              const BenchOptions& opts) {
  require_exponent(range_max);
  AccumulatedResult result;
  result.method = method;
  result.range_max = range_max;
  result.per_exponent.resize(range_max);

  if (method.kind == Method::Kind::Oracle) {
    const OptimalTable table = optimal_table(range_max, opts.oracle_cache, opts.workers);
    std::copy(table.lengths().begin(), table.lengths().end(),
              result.per_exponent.begin());
  } else {
    if (method.kind == Method::Kind::Gadsa) {
      validate(cfg);
      result.seeds.resize(range_max);
      for (std::uint64_t e = 1; e <= range_max; ++e) {
        result.seeds[e - 1] = derive_seed(cfg.seed, run, e);
      }
    }
    detail::parallel_for(range_max, opts.workers, [&](std::size_t i) {
      GaConfig local = cfg;
      if (!result.seeds.empty()) local.seed = result.seeds[i];
      result.per_exponent[i] = method_length(method, i + 1, local, opts);
    });
  }
  result.total = std::accumulate(result.per_exponent.begin(),
                                 result.per_exponent.end(), std::uint64_t{0});
  return result;
}

RunStats summarize(std::span<const std::uint64_t> totals) {
  if (totals.empty()) {
    throw Error(ErrorKind::InvalidArgument, "no runs to summarize");
  }
  RunStats stats;
  stats.runs = static_cast<std::uint32_t>(totals.size());
  stats.totals.assign(totals.begin(), totals.end());
  std::vector<std::uint64_t> sorted(totals.begin(), totals.end());
  std::sort(sorted.begin(), sorted.end());
  stats.best = sorted.front();
  stats.worst = sorted.back();
  const double sum = std::accumulate(sorted.begin(), sorted.end(), 0.0);
  stats.average = sum / static_cast<double>(sorted.size());
  const std::size_t mid = sorted.size() / 2;
  stats.median = sorted.size() % 2 == 1
                     ? static_cast<double>(sorted[mid])
                     : (static_cast<double>(sorted[mid - 1]) +
                        static_cast<double>(sorted[mid])) / 2.0;
  return stats;
}

RunStats run_stats(const Method& method, std::uint64_t range_max,
                   std::uint32_t runs, const GaConfig& cfg,
                   const BenchOptions& opts) {
  if (runs == 0) throw Error(ErrorKind::InvalidArgument, "runs must be >= 1");
  std::vector<std::uint64_t> totals;
  totals.reserve(runs);
  if (method.deterministic()) {
    totals.assign(runs, accumulated(method, range_max, cfg, 0, opts).total);
  } else {
    for (std::uint32_t r = 0; r < runs; ++r) {
      totals.push_back(accumulated(method, range_max, cfg, r, opts).total);
    }
  }
  return summarize(totals);
}

std::vector<std::uint64_t> random_exponents(std::uint32_t bits,
                                            std::uint32_t samples,
                                            std::uint64_t master_seed) {
  if (bits < 2 || bits > 64) {
    throw Error(ErrorKind::InvalidArgument, "bits must lie in [2, 64]");
  }
  if (samples == 0) throw Error(ErrorKind::InvalidArgument, "samples must be >= 1");
  Rng rng(hash64({master_seed, bits, samples}));
  const std::uint64_t top = std::uint64_t{1} << (bits - 1);
  std::vector<std::uint64_t> out;
  out.reserve(samples);
  for (std::uint32_t s = 0; s < samples; ++s) {
    out.push_back(top | (rng.next() & (top - 1)));
  }
  return out;
}

std::vector<MethodAverage> random_exponent_avg(std::uint32_t bits,
                                               std::uint32_t samples,
                                               std::span<const Method> methods,
                                               const GaConfig& cfg,
                                               const BenchOptions& opts) {
  if (samples == 0) throw Error(ErrorKind::InvalidArgument, "samples must be >= 1");
  const std::vector<std::uint64_t> exponents = random_exponents(bits, samples, cfg.seed);
  std::vector<MethodAverage> out;
  for (const Method& method : methods) {
    MethodAverage avg;
    avg.method = method;
    avg.lengths.resize(samples);
    detail::parallel_for(samples, opts.workers, [&](std::size_t s) {
      GaConfig local = cfg;
      local.seed = derive_seed(cfg.seed, s, exponents[s]);
      avg.lengths[s] = method_length(method, exponents[s], local, opts);
    });
    avg.average = std::accumulate(avg.lengths.begin(), avg.lengths.end(), 0.0) /
                  static_cast<double>(samples);
    out.push_back(std::move(avg));
  }
  return out;
}

std::span<const SpecialExponent> special_exponent_table() { return kSpecial; }

std::vector<SpecialExponentResult> special_exponents(const GaConfig& cfg,
                                                     std::uint32_t seeds,
                                                     const BenchOptions& opts) {
  if (seeds == 0) throw Error(ErrorKind::InvalidArgument, "seeds must be >= 1");
  validate(cfg);
  const auto table = special_exponent_table();
  std::vector<SpecialExponentResult> results(table.size());
  std::vector<GaResult> runs(table.size() * seeds);
  detail::parallel_for(runs.size(), opts.workers, [&](std::size_t i) {
    const std::uint64_t e = table[i / seeds].exponent;
    GaConfig local = cfg;
    local.seed = derive_seed(cfg.seed, i % seeds, e);
    runs[i] = evolve(e, local);
  });
  for (std::size_t t = 0; t < table.size(); ++t) {
    SpecialExponentResult& r = results[t];
    r.exponent = table[t].exponent;
    r.printed_report = validate_chain(table[t].printed_chain, r.exponent);
    r.printed_length = static_cast<ChainLength>(table[t].printed_chain.size() - 1);
    r.reported_length = table[t].reported_length;
    for (std::uint32_t s = 0; s < seeds; ++s) {
      const GaResult& g = runs[t * seeds + s];
      r.per_seed.push_back(g.length);
      if (r.best_chain.empty() || g.length < r.best_length) {
        r.best_length = g.length;
        r.best_chain = g.best.values;
      }
    }
  }
  return results;
}

TableScale table_scale(std::string_view name) {
  if (name == "ci") {
    return {"ci", {128}, 5, 100, {32}, 20, 5};
  }
  if (name == "paper") {
    return {"paper", {512, 1000, 1024, 2000, 2048, 4096}, 40, 300, {32, 64}, 20, 40};
  }
  throw Error(ErrorKind::InvalidArgument,
              "unknown scale '" + std::string(name) + "' (expected ci or paper)");
}

Report reproduce_table1(const TableScale& scale, const GaConfig& base,
                        const BenchOptions& opts) {
  const GaConfig cfg = scaled(scale, base);
  Report report{meta_for(scale, cfg), {}};
  const std::uint64_t widest = *std::max_element(scale.ranges.begin(), scale.ranges.end());
  const OptimalTable table = optimal_table(widest, opts.oracle_cache, opts.workers);
  for (std::uint64_t p : scale.ranges) {
    const RunStats ga = run_stats(Method::gadsa(), p, scale.runs, cfg, opts);
    report.rows.push_back({"ORACLE", "range_max", p, {count("total", table.accumulated(p))}, {}, {}});
    report.rows.push_back({"GADSA", "range_max", p, {count("total", ga.best)}, {}, {}});
    report.rows.push_back({"MARY4", "range_max", p,
                           {count("total", accumulated(Method::mary(4), p, cfg, 0, opts).total)}, {}, {}});
    report.rows.push_back({"BINARY", "range_max", p,
                           {count("total", accumulated(Method::binary(), p, cfg, 0, opts).total)}, {}, {}});
  }
  return report;
}

Report reproduce_table2(const TableScale& scale, const GaConfig& base,
                        const BenchOptions& opts) {
  const GaConfig cfg = scaled(scale, base);
  Report report{meta_for(scale, cfg), {}};
  for (std::uint64_t p : scale.ranges) {
    const RunStats s = run_stats(Method::gadsa(), p, scale.runs, cfg, opts);
    report.rows.push_back({"GADSA", "range_max", p,
                           {count("best", s.best), average("average", s.average),
                            average("median", s.median), count("worst", s.worst),
                            count("runs", s.runs)},
                           {}, {}});
  }
  return report;
}

Report reproduce_table3(const TableScale& scale, const GaConfig& base,
                        const BenchOptions& opts) {
  const GaConfig cfg = scaled(scale, base);
  Report report{meta_for(scale, cfg), {}};
  const Method methods[] = {Method::gadsa(), Method::binary(), Method::mary(4)};
  for (std::uint32_t bits : scale.bit_sizes) {
    for (const MethodAverage& avg :
         random_exponent_avg(bits, scale.samples, methods, cfg, opts)) {
      report.rows.push_back({avg.method.name(), "bits", bits,
                             {average("average", avg.average), count("samples", scale.samples)},
                             {}, {}});
    }
  }
  return report;
}

Report reproduce_table4(const TableScale& scale, const GaConfig& base,
                        const BenchOptions& opts) {
  const GaConfig cfg = scaled(scale, base);
  Report report{meta_for(scale, cfg), {}};
  const auto table = special_exponent_table();
  const auto results = special_exponents(cfg, scale.special_seeds, opts);
  for (std::size_t t = 0; t < results.size(); ++t) {
    const SpecialExponentResult& r = results[t];
    std::string note;
    for (const Violation& v : r.printed_report.violations) {
      if (!note.empty()) note += "; ";
      note += std::string(to_string(v.kind)) + " at position " + std::to_string(v.position);
    }
    report.rows.push_back({"PRINTED", "exponent", r.exponent,
                           {count("additions", r.printed_length),
                            count("valid", r.printed_report.valid() ? 1 : 0),
                            count("reported", r.reported_length)},
                           table[t].printed_chain, note});
    report.rows.push_back({"GADSA", "exponent", r.exponent,
                           {count("best_length", r.best_length),
                            count("seeds", r.per_seed.size())},
                           r.best_chain, {}});
    const OracleResult o = search_optimal(
        r.exponent, std::min(opts.oracle_budget, kSpecialOracleBudget));
    report.rows.push_back({"ORACLE", "exponent", r.exponent,
                           {count("best_length", o.length()),
                            count("proven", o.proven ? 1 : 0)},
                           {o.chain.values().begin(), o.chain.values().end()}, {}});
  }
  return report;
}

}  // namespace addchain
