#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "addchain/chain.hpp"
#include "addchain/ga.hpp"
#include "addchain/ga_config.hpp"
#include "addchain/oracle.hpp"
#include "addchain/report.hpp"

namespace addchain {

struct Method {
  enum class Kind { Gadsa, Binary, Mary, Oracle };

  Kind kind = Kind::Gadsa;
  std::uint32_t radix = 4;  // Mary only

  static Method gadsa() { return {Kind::Gadsa}; }
  static Method binary() { return {Kind::Binary}; }
  static Method mary(std::uint32_t m = 4) { return {Kind::Mary, m}; }
  static Method oracle() { return {Kind::Oracle}; }

  /// "GADSA", "BINARY", "MARY4", "ORACLE".
  std::string name() const;
  bool deterministic() const noexcept { return kind != Kind::Gadsa; }

  friend bool operator==(const Method&, const Method&) = default;
};

struct BenchOptions {
  unsigned workers = 1;
  std::optional<std::filesystem::path> oracle_cache;
  /// Node budget for single-exponent oracle calls (tables always run exact).
  std::uint64_t oracle_budget = kUnlimitedNodes;
};

/// Seed for GA run `run` on `exponent` under `master_seed`.
std::uint64_t derive_seed(std::uint64_t master_seed, std::uint64_t run,
                          std::uint64_t exponent) noexcept;

/// Chain length produced by `method` for one exponent. GADSA uses `cfg` as
/// given (including its seed).
ChainLength method_length(const Method& method, std::uint64_t exponent,
                          const GaConfig& cfg, const BenchOptions& opts = {});

struct AccumulatedResult {
  Method method;
  std::uint64_t range_max = 0;
  std::uint64_t total = 0;
  std::vector<ChainLength> per_exponent;  // index e - 1
  std::vector<std::uint64_t> seeds;       // GADSA only, index e - 1
};

/// Sum of chain lengths over e in [1, range_max]. GADSA runs one evolve per
/// exponent with seed derive_seed(cfg.seed, run, e).
AccumulatedResult accumulated(const Method& method, std::uint64_t range_max,
                              const GaConfig& cfg, std::uint32_t run = 0,
                              const BenchOptions& opts = {});

struct RunStats {
  std::uint64_t best = 0;
  std::uint64_t worst = 0;
  double average = 0.0;
  double median = 0.0;
  std::uint32_t runs = 0;
  std::vector<std::uint64_t> totals;  // per run, run order
};

/// Order statistics of the totals; median of an even count is the mean of
/// the two central values. `totals` must be non-empty.
RunStats summarize(std::span<const std::uint64_t> totals);

/// `runs` accumulated runs (run index 0..runs-1, master seed cfg.seed).
RunStats run_stats(const Method& method, std::uint64_t range_max,
                   std::uint32_t runs, const GaConfig& cfg,
                   const BenchOptions& opts = {});

struct MethodAverage {
  Method method;
  double average = 0.0;
  std::vector<ChainLength> lengths;
};

/// Draws `samples` exponents with exactly `bits` bits from cfg.seed and
/// averages each method's chain length over them.
std::vector<std::uint64_t> random_exponents(std::uint32_t bits,
                                            std::uint32_t samples,
                                            std::uint64_t master_seed);
std::vector<MethodAverage> random_exponent_avg(std::uint32_t bits,
                                               std::uint32_t samples,
                                               std::span<const Method> methods,
                                               const GaConfig& cfg,
                                               const BenchOptions& opts = {});

/// A printed chain from the published special-exponent table.
struct SpecialExponent {
  std::uint64_t exponent;
  std::vector<std::uint64_t> printed_chain;
  ChainLength reported_length;
};

std::span<const SpecialExponent> special_exponent_table();

struct SpecialExponentResult {
  std::uint64_t exponent = 0;
  ValidationReport printed_report;
  ChainLength printed_length = 0;  // additions in the printed chain
  ChainLength reported_length = 0;
  ChainLength best_length = 0;     // best GA length over the seeds
  std::vector<std::uint64_t> best_chain;
  std::vector<ChainLength> per_seed;
};

/// GA on every special exponent with `seeds` runs each (seed
/// derive_seed(cfg.seed, s, e)), plus validation of the printed chains.
std::vector<SpecialExponentResult> special_exponents(
    const GaConfig& cfg, std::uint32_t seeds, const BenchOptions& opts = {});

/// Budgets for the table reproductions.
struct TableScale {
  std::string name;
  std::vector<std::uint64_t> ranges;
  std::uint32_t runs = 0;
  std::uint32_t max_generations = 0;
  std::vector<std::uint32_t> bit_sizes;
  std::uint32_t samples = 0;
  std::uint32_t special_seeds = 0;
};

/// "ci" (P=128, 5 runs, 100 generations) or "paper" (full ranges, 40 runs,
/// 300 generations). Throws Error(InvalidArgument) otherwise.
TableScale table_scale(std::string_view name);

/// Accumulated totals per range for ORACLE, GADSA (best run), MARY4, BINARY.
Report reproduce_table1(const TableScale& scale, const GaConfig& cfg,
                        const BenchOptions& opts = {});
/// GADSA best/average/median/worst per range.
Report reproduce_table2(const TableScale& scale, const GaConfig& cfg,
                        const BenchOptions& opts = {});
/// Average lengths by exponent bit size for GADSA, BINARY, MARY4.
Report reproduce_table3(const TableScale& scale, const GaConfig& cfg,
                        const BenchOptions& opts = {});
/// Special exponents: printed-chain validation and GA best lengths.
Report reproduce_table4(const TableScale& scale, const GaConfig& cfg,
                        const BenchOptions& opts = {});

}  // namespace addchain
