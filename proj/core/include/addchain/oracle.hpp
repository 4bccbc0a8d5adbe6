#pragma once

#include <cstdint>
#include <filesystem>
#include <limits>
#include <optional>
#include <span>
#include <vector>

#include "addchain/chain.hpp"
#include "addchain/error.hpp"

namespace addchain {

inline constexpr std::uint64_t kUnlimitedNodes =
    std::numeric_limits<std::uint64_t>::max();

struct OracleResult {
  AdditionChain chain;
  /// False when the node budget ran out; `chain` is then the best chain
  /// known (possibly the binary chain) and only an upper bound.
  bool proven = true;
  std::uint64_t nodes = 0;

  ChainLength length() const noexcept { return chain.additions(); }
};

/// Iterative-deepening search for a shortest addition chain. Depth starts
/// at lower_bound(e). Never throws for e >= 1; reports budget exhaustion
/// through `proven`.
OracleResult search_optimal(std::uint64_t exponent,
                            std::uint64_t node_budget = kUnlimitedNodes);

/// Thrown by optimal_length / optimal_chain when the budget runs out.
class BudgetExceeded : public Error {
 public:
  explicit BudgetExceeded(OracleResult best_found);
  const OracleResult& best_found() const noexcept { return best_; }

 private:
  OracleResult best_;
};

ChainLength optimal_length(std::uint64_t exponent,
                           std::uint64_t node_budget = kUnlimitedNodes);
AdditionChain optimal_chain(std::uint64_t exponent,
                            std::uint64_t node_budget = kUnlimitedNodes);

/// l(n) for 1 <= n <= limit.
class OptimalTable {
 public:
  OptimalTable() = default;
  explicit OptimalTable(std::vector<std::uint16_t> lengths)
      : lengths_(std::move(lengths)) {}

  std::uint64_t limit() const noexcept { return lengths_.size(); }
  /// n in [1, limit].
  ChainLength length(std::uint64_t n) const { return lengths_.at(n - 1); }
  /// Sum of l(n) over [1, range_max].
  std::uint64_t accumulated(std::uint64_t range_max) const;
  std::span<const std::uint16_t> lengths() const noexcept { return lengths_; }

  friend bool operator==(const OptimalTable&, const OptimalTable&) = default;

 private:
  std::vector<std::uint16_t> lengths_;
};

/// Runs the exact search for every n <= limit on `workers` threads.
OptimalTable compute_optimal_table(std::uint64_t limit, unsigned workers = 1);

/// Loads the table from `cache_path` when it holds at least `limit` entries
/// and passes its checksum; otherwise computes it and rewrites the cache.
OptimalTable optimal_table(std::uint64_t limit,
                           const std::optional<std::filesystem::path>& cache_path,
                           unsigned workers = 1);

/// Cache layout (little-endian): "ACOT", u32 version, u64 limit,
/// limit x u16 lengths, u64 FNV-1a checksum of everything before it.
void write_table_cache(const OptimalTable& table,
                       const std::filesystem::path& path);
/// Throws Error(CacheCorrupt) for a bad file, Error(IoError) if unreadable.
OptimalTable read_table_cache(const std::filesystem::path& path);

}  // namespace addchain
