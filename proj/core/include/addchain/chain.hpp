#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace addchain {

/// Number of additions in a chain (element count minus one). This is also
/// the number of multiplications needed to evaluate the power.
using ChainLength = std::uint32_t;

/// One addition step: values[i] = values[j] + values[k], 0-based, j <= k < i.
struct Step {
  std::uint32_t j = 0;
  std::uint32_t k = 0;

  friend bool operator==(const Step&, const Step&) = default;
};

/// A strictly increasing sequence 1 = x_0 < x_1 < ... < x_m where each element
/// after the first is the sum of two earlier ones. The chain is complete for
/// its last element, `target()`.
class AdditionChain {
 public:
  /// Builds a chain from raw values, recovering steps with decompose_step.
  /// Throws Error(InvalidChain) if the values are not an addition chain.
  static AdditionChain from_values(std::vector<std::uint64_t> values);

  /// Builds a chain with explicit steps (steps.size() == values.size() - 1,
  /// steps[i - 1] produces values[i]). Throws Error(InvalidChain) on any
  /// invariant violation.
  AdditionChain(std::vector<std::uint64_t> values, std::vector<Step> steps);

  /// The identity chain (1).
  AdditionChain() : values_{1} {}

  std::span<const std::uint64_t> values() const noexcept { return values_; }
  std::span<const Step> steps() const noexcept { return steps_; }
  std::uint64_t target() const noexcept { return values_.back(); }
  ChainLength additions() const noexcept {
    return static_cast<ChainLength>(values_.size() - 1);
  }
  std::size_t size() const noexcept { return values_.size(); }

  friend bool operator==(const AdditionChain&, const AdditionChain&) = default;

 private:
  std::vector<std::uint64_t> values_;
  std::vector<Step> steps_;
};

enum class ViolationKind {
  NotOneAtStart,
  NotIncreasing,
  NoSummandPair,
  Overshoot,
  WrongTerminal,
};

std::string_view to_string(ViolationKind kind) noexcept;

struct Violation {
  std::size_t position = 0;  // 1-based
  ViolationKind kind = ViolationKind::NotOneAtStart;
  std::string detail;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool valid() const noexcept { return violations.empty(); }
  bool has(ViolationKind kind) const noexcept;
  /// First violation of the given kind, or nullptr.
  const Violation* find(ViolationKind kind) const noexcept;
};

/// Checks that `values` is a complete addition chain for `exponent`. At most
/// one violation is reported per kind, at the first position that fails it.
/// Never throws on malformed input.
ValidationReport validate_chain(std::span<const std::uint64_t> values,
                                std::uint64_t exponent);

/// Finds (j, k), j <= k < i, with values[j] + values[k] == values[i],
/// preferring the largest k and then the largest j. All indices 0-based.
/// Throws Error(NoSummandPair) if there is none.
Step decompose_step(std::span<const std::uint64_t> values, std::size_t i);

/// Straight-line program instruction: power[target] = power[j] * power[k].
struct Instruction {
  std::uint32_t target = 0;
  std::uint32_t j = 0;
  std::uint32_t k = 0;

  friend bool operator==(const Instruction&, const Instruction&) = default;
};

std::vector<Instruction> to_program(const AdditionChain& chain);

/// Runs `program` over exponents (i.e. in the additive semigroup of the
/// integers), reconstructing the chain values it computes.
std::vector<std::uint64_t> replay_program(std::span<const Instruction> program);

/// floor(log2 e) + ceil(log2 popcount(e)); never exceeds the optimal length.
ChainLength lower_bound(std::uint64_t exponent);

int floor_log2(std::uint64_t x) noexcept;
int ceil_log2(std::uint64_t x) noexcept;

/// Parses the chain text format: whitespace separated decimal integers,
/// lines starting with '#' ignored. Throws Error(InvalidArgument) on a bad
/// token.
std::vector<std::uint64_t> parse_chain_text(std::string_view text);
std::vector<std::uint64_t> read_chain_file(const std::filesystem::path& path);

/// Space separated values with no trailing newline.
std::string format_values(std::span<const std::uint64_t> values);

}  // namespace addchain
