#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "addchain/chain.hpp"
#include "addchain/ga_config.hpp"
#include "addchain/rng.hpp"

namespace addchain {

/// How a gene came to be, as recorded on the chromosome.
enum class RuleKind : std::uint8_t {
  Fixed,      // positions 1-3
  Double,     // D
  Add,        // A
  Random,     // R
  Generated,  // G: the inherited rule was infeasible, a fresh gene was drawn
  Exchanged,  // E: rule swapped in by uniform crossover
};

/// The arithmetic a gene performed. Every gene after the first is
/// last + values[partner]: Double uses partner = last, Add uses last - 1.
enum class GeneOp : std::uint8_t { Seed, Double, Add, Random };

struct RuleTag {
  RuleKind kind = RuleKind::Fixed;
  GeneOp op = GeneOp::Seed;
  std::uint32_t partner = 0;  // 0-based, < own position

  char letter() const noexcept;
  friend bool operator==(const RuleTag&, const RuleTag&) = default;
};

/// A complete addition chain for the target exponent plus one rule tag per
/// gene.
struct Chromosome {
  std::vector<std::uint64_t> values;
  std::vector<RuleTag> rules;

  std::size_t size() const noexcept { return values.size(); }
  std::uint64_t last() const noexcept { return values.back(); }
  AdditionChain chain() const;

  friend bool operator==(const Chromosome&, const Chromosome&) = default;
};

/// Builds the fixed prefix (1, 2) or (1, 2, third) with third in {3, 4}.
Chromosome seed_prefix(std::uint64_t third = 0);

/// Element count minus one; lower is better.
inline ChainLength fitness(const Chromosome& c) noexcept {
  return static_cast<ChainLength>(c.values.size() - 1);
}

/// Index of the largest chain element <= exponent - last, found by binary
/// search over the strictly increasing chain. Requires last < exponent.
std::size_t repair_partner(std::span<const std::uint64_t> chain,
                           std::uint64_t exponent);

/// Value form of repair_partner.
inline std::uint64_t repair_overshoot(std::span<const std::uint64_t> chain,
                                      std::uint64_t exponent) {
  return chain[repair_partner(chain, exponent)];
}

/// Appends one gene drawn from the rule roulette (double / add last two /
/// add a random earlier gene), repairing overshoot. The appended tag has
/// kind `label` unless the gene was repaired, in which case it is tagged
/// Random with the repaired partner. Requires last < exponent.
void append_generated_gene(Chromosome& c, std::uint64_t exponent,
                           const GaConfig& cfg, Rng& rng,
                           std::optional<RuleKind> label = std::nullopt);

/// Extends a valid incomplete prefix (>= 2 elements) until it reaches the
/// exponent. Throws Error(NonTermination) after 4 * bit_length(exponent)
/// appended genes.
Chromosome gene_generation(Chromosome prefix, std::uint64_t exponent,
                           const GaConfig& cfg, Rng& rng,
                           std::optional<RuleKind> label = std::nullopt);

std::vector<Chromosome> initial_population(std::uint64_t exponent,
                                           const GaConfig& cfg, Rng& rng);

/// Sampling weights: worst_fitness - fitness_i + 1.
class RouletteWheel {
 public:
  explicit RouletteWheel(std::span<const Chromosome> population);

  std::size_t spin(Rng& rng) const;
  std::span<const std::uint64_t> weights() const noexcept { return weights_; }

 private:
  std::vector<std::uint64_t> weights_;
  std::vector<std::uint64_t> cumulative_;
};

const Chromosome& roulette_select(std::span<const Chromosome> population,
                                  Rng& rng);

enum class CrossoverKind { None, SinglePoint, TwoPoint, Uniform };

/// Draws whether a pair is crossed and, if so, which variant.
CrossoverKind select_crossover(const GaConfig& cfg, Rng& rng);

using ChildPair = std::pair<Chromosome, Chromosome>;

ChildPair crossover(const Chromosome& p1, const Chromosome& p2,
                    std::uint64_t exponent, const GaConfig& cfg, Rng& rng);

/// Positions are 1-based gene positions. `point` in [4, min_len - 1].
ChildPair crossover_single_point(const Chromosome& p1, const Chromosome& p2,
                                 std::uint64_t exponent, const GaConfig& cfg,
                                 Rng& rng);
ChildPair crossover_single_point_at(const Chromosome& p1, const Chromosome& p2,
                                    std::size_t point, std::uint64_t exponent,
                                    const GaConfig& cfg, Rng& rng);

/// Children take the other parent's rules strictly between p and q and
/// their own parent's rules from q on. 4 <= p < q <= min_len - 1.
ChildPair crossover_two_point(const Chromosome& p1, const Chromosome& p2,
                              std::uint64_t exponent, const GaConfig& cfg,
                              Rng& rng);
ChildPair crossover_two_point_at(const Chromosome& p1, const Chromosome& p2,
                                 std::size_t p, std::size_t q,
                                 std::uint64_t exponent, const GaConfig& cfg,
                                 Rng& rng);

/// mask[i] refers to 1-based position i + 1; mask.size() == min_len.
ChildPair crossover_uniform(const Chromosome& p1, const Chromosome& p2,
                            std::uint64_t exponent, const GaConfig& cfg,
                            Rng& rng);
ChildPair crossover_uniform_masked(const Chromosome& p1, const Chromosome& p2,
                                   std::span<const bool> mask,
                                   std::uint64_t exponent, const GaConfig& cfg,
                                   Rng& rng);

/// N-mutant mutation; applied with probability cfg.mutation_rate.
Chromosome mutate(const Chromosome& child, std::uint64_t exponent,
                  const GaConfig& cfg, Rng& rng);
/// Mutation at a fixed 1-based point in [3, child.size()], always applied.
Chromosome mutate_at(const Chromosome& child, std::size_t point,
                     std::uint64_t exponent, const GaConfig& cfg, Rng& rng);

struct GaResult {
  Chromosome best;
  ChainLength length = 0;
  std::uint32_t generations_run = 0;
  std::uint64_t evaluations = 0;
  /// Entry 0 is the initial population, then one entry per generation.
  std::vector<ChainLength> best_length_per_generation;
  std::uint64_t seed = 0;

  friend bool operator==(const GaResult&, const GaResult&) = default;
};

/// Runs the generational search. Deterministic in (exponent, cfg).
/// Throws Error(ConfigInvalid) for a bad config and Error(InvalidArgument)
/// for exponent 0.
GaResult evolve(std::uint64_t exponent, const GaConfig& cfg);

/// Rebuilds the values of `c` from its rule tags alone (partners included).
std::vector<std::uint64_t> replay_rules(std::span<const RuleTag> rules);

}  // namespace addchain
