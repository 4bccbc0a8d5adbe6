#include "addchain/ga.hpp"

#include <algorithm>
#include <bit>
#include <memory>

#include "addchain/error.hpp"

namespace addchain {
namespace {

RuleKind kind_for(GeneOp op) noexcept {
  switch (op) {
    case GeneOp::Double: return RuleKind::Double;
    case GeneOp::Add: return RuleKind::Add;
    case GeneOp::Random: return RuleKind::Random;
    case GeneOp::Seed: break;
  }
  return RuleKind::Fixed;
}

GeneOp draw_op(const GaConfig& cfg, Rng& rng) {
  const double u = rng.unit();
  if (u < cfg.p_double) return GeneOp::Double;
  if (u < cfg.p_double + cfg.p_add) return GeneOp::Add;
  return GeneOp::Random;
}

// Partner index for an op applied to a chain of `size` genes.
std::uint32_t draw_partner(GeneOp op, std::size_t size, Rng& rng) {
  switch (op) {
    case GeneOp::Double: return static_cast<std::uint32_t>(size - 1);
    case GeneOp::Add: return static_cast<std::uint32_t>(size - 2);
    default: return static_cast<std::uint32_t>(rng.below(size));
  }
}

bool overshoots(const Chromosome& c, std::uint32_t partner,
                std::uint64_t exponent) noexcept {
  return c.values[partner] > exponent - c.last();
}

void push_gene(Chromosome& c, RuleTag tag) {
  c.values.push_back(c.last() + c.values[tag.partner]);
  c.rules.push_back(tag);
}

// Replays one inherited rule; an infeasible rule becomes a generated gene.
void replay_gene(Chromosome& child, const RuleTag& donor, RuleKind label,
                 std::uint64_t exponent, const GaConfig& cfg, Rng& rng) {
  const GeneOp op = donor.op == GeneOp::Seed ? GeneOp::Random : donor.op;
  const std::uint32_t partner = draw_partner(op, child.size(), rng);
  if (overshoots(child, partner, exponent)) {
    append_generated_gene(child, exponent, cfg, rng, RuleKind::Generated);
    return;
  }
  push_gene(child, {label, op, partner});
}

Chromosome prefix_of(const Chromosome& c, std::size_t count) {
  Chromosome out;
  out.values.assign(c.values.begin(), c.values.begin() + count);
  out.rules.assign(c.rules.begin(), c.rules.begin() + count);
  return out;
}

// Replays donor rules [from, to) onto child, stopping once the exponent is hit.
void replay_range(Chromosome& child, const Chromosome& donor, std::size_t from,
                  std::size_t to, std::uint64_t exponent, const GaConfig& cfg,
                  Rng& rng) {
  for (std::size_t i = from; i < to && child.last() != exponent; ++i) {
    replay_gene(child, donor.rules[i], kind_for(donor.rules[i].op), exponent,
                cfg, rng);
  }
}

Chromosome finish(Chromosome child, std::uint64_t exponent, const GaConfig& cfg,
                  Rng& rng) {
  if (child.last() == exponent) return child;
  return gene_generation(std::move(child), exponent, cfg, rng,
                         RuleKind::Generated);
}

}  // namespace

char RuleTag::letter() const noexcept {
  switch (kind) {
    case RuleKind::Fixed: return '-';
    case RuleKind::Double: return 'D';
    case RuleKind::Add: return 'A';
    case RuleKind::Random: return 'R';
    case RuleKind::Generated: return 'G';
    case RuleKind::Exchanged: return 'E';
  }
  return '?';
}

AdditionChain Chromosome::chain() const {
  std::vector<Step> steps;
  steps.reserve(values.size() - 1);
  for (std::size_t i = 1; i < values.size(); ++i) {
    const auto last = static_cast<std::uint32_t>(i - 1);
    const std::uint32_t partner = rules[i].partner;
    steps.push_back({std::min(partner, last), std::max(partner, last)});
  }
  return AdditionChain(values, std::move(steps));
}

Chromosome seed_prefix(std::uint64_t third) {
  Chromosome c;
  c.values = {1, 2};
  c.rules = {{RuleKind::Fixed, GeneOp::Seed, 0},
             {RuleKind::Fixed, GeneOp::Double, 0}};
  if (third == 3) {
    push_gene(c, {RuleKind::Fixed, GeneOp::Add, 0});
  } else if (third == 4) {
    push_gene(c, {RuleKind::Fixed, GeneOp::Double, 1});
  } else if (third != 0) {
    throw Error(ErrorKind::InvalidArgument, "third gene must be 3 or 4");
  }
  return c;
}

std::size_t repair_partner(std::span<const std::uint64_t> chain,
                           std::uint64_t exponent) {
  const std::uint64_t gap = exponent - chain.back();
  const auto it = std::upper_bound(chain.begin(), chain.end(), gap);
  return static_cast<std::size_t>(it - chain.begin()) - 1;
}

void append_generated_gene(Chromosome& c, std::uint64_t exponent,
                           const GaConfig& cfg, Rng& rng,
                           std::optional<RuleKind> label) {
  const GeneOp op = draw_op(cfg, rng);
  const std::uint32_t partner = draw_partner(op, c.size(), rng);
  if (overshoots(c, partner, exponent)) {
    const auto repaired = static_cast<std::uint32_t>(repair_partner(c.values, exponent));
    push_gene(c, {label.value_or(RuleKind::Random), GeneOp::Random, repaired});
    return;
  }
  push_gene(c, {label.value_or(kind_for(op)), op, partner});
}

Chromosome gene_generation(Chromosome prefix, std::uint64_t exponent,
                           const GaConfig& cfg, Rng& rng,
                           std::optional<RuleKind> label) {
  if (prefix.size() < 2 || prefix.last() > exponent) {
    throw Error(ErrorKind::InvalidArgument,
                "gene generation needs a prefix of >= 2 genes below the exponent");
  }
  const std::size_t guard = 4 * static_cast<std::size_t>(std::bit_width(exponent));
  for (std::size_t appended = 0; prefix.last() != exponent; ++appended) {
    if (appended == guard) {
      throw Error(ErrorKind::NonTermination,
                  "gene generation did not reach " + std::to_string(exponent));
    }
    append_generated_gene(prefix, exponent, cfg, rng, label);
  }
  return prefix;
}

std::vector<Chromosome> initial_population(std::uint64_t exponent,
                                           const GaConfig& cfg, Rng& rng) {
  if (exponent == 0) {
    throw Error(ErrorKind::InvalidArgument, "exponent must be >= 1");
  }
  std::vector<Chromosome> population;
  population.reserve(cfg.population_size);
  if (exponent <= 2) {
    Chromosome c = seed_prefix();
    if (exponent == 1) {
      c.values.pop_back();
      c.rules.pop_back();
    }
    population.assign(cfg.population_size, c);
    return population;
  }
  for (std::uint32_t i = 0; i < cfg.population_size; ++i) {
    std::uint64_t third = 2 + rng.between(1, 2);
    if (third > exponent) third = 3;  // repair: 2 + largest element <= 1
    population.push_back(gene_generation(seed_prefix(third), exponent, cfg, rng));
  }
  return population;
}

RouletteWheel::RouletteWheel(std::span<const Chromosome> population) {
  if (population.empty()) {
    throw Error(ErrorKind::InvalidArgument, "cannot select from an empty population");
  }
  ChainLength worst = 0;
  for (const auto& c : population) worst = std::max(worst, fitness(c));
  weights_.reserve(population.size());
  cumulative_.reserve(population.size());
  std::uint64_t total = 0;
  for (const auto& c : population) {
    const std::uint64_t w = worst - fitness(c) + 1;
    weights_.push_back(w);
    total += w;
    cumulative_.push_back(total);
  }
}

std::size_t RouletteWheel::spin(Rng& rng) const {
  const std::uint64_t r = rng.below(cumulative_.back());
  return static_cast<std::size_t>(
      std::upper_bound(cumulative_.begin(), cumulative_.end(), r) -
      cumulative_.begin());
}

const Chromosome& roulette_select(std::span<const Chromosome> population,
                                  Rng& rng) {
  return population[RouletteWheel(population).spin(rng)];
}

CrossoverKind select_crossover(const GaConfig& cfg, Rng& rng) {
  if (!(rng.unit() < cfg.crossover_rate)) return CrossoverKind::None;
  const double u = rng.unit();
  if (u < cfg.p_single) return CrossoverKind::SinglePoint;
  if (u < cfg.p_single + cfg.p_two) return CrossoverKind::TwoPoint;
  return CrossoverKind::Uniform;
}

ChildPair crossover(const Chromosome& p1, const Chromosome& p2,
                    std::uint64_t exponent, const GaConfig& cfg, Rng& rng) {
  switch (select_crossover(cfg, rng)) {
    case CrossoverKind::SinglePoint:
      return crossover_single_point(p1, p2, exponent, cfg, rng);
    case CrossoverKind::TwoPoint:
      return crossover_two_point(p1, p2, exponent, cfg, rng);
    case CrossoverKind::Uniform:
      return crossover_uniform(p1, p2, exponent, cfg, rng);
    case CrossoverKind::None:
      break;
  }
  return {p1, p2};
}

ChildPair crossover_single_point(const Chromosome& p1, const Chromosome& p2,
                                 std::uint64_t exponent, const GaConfig& cfg,
                                 Rng& rng) {
  const std::size_t min_len = std::min(p1.size(), p2.size());
  if (min_len < 5) return {p1, p2};
  const std::size_t point = rng.between(4, min_len - 1);
  return crossover_single_point_at(p1, p2, point, exponent, cfg, rng);
}

ChildPair crossover_single_point_at(const Chromosome& p1, const Chromosome& p2,
                                    std::size_t point, std::uint64_t exponent,
                                    const GaConfig& cfg, Rng& rng) {
  const std::size_t min_len = std::min(p1.size(), p2.size());
  if (point < 4 || point >= min_len) {
    throw Error(ErrorKind::InvalidArgument, "crossover point out of range");
  }
  auto child_of = [&](const Chromosome& own, const Chromosome& donor) {
    Chromosome child = prefix_of(own, point);
    replay_range(child, donor, point, donor.size(), exponent, cfg, rng);
    return finish(std::move(child), exponent, cfg, rng);
  };
  Chromosome c1 = child_of(p1, p2);
  Chromosome c2 = child_of(p2, p1);
  return {std::move(c1), std::move(c2)};
}

ChildPair crossover_two_point(const Chromosome& p1, const Chromosome& p2,
                              std::uint64_t exponent, const GaConfig& cfg,
                              Rng& rng) {
  const std::size_t min_len = std::min(p1.size(), p2.size());
  if (min_len < 6) return {p1, p2};
  const std::size_t hi = min_len - 1;
  // Two distinct points, uniform over unordered pairs in [4, hi].
  const std::size_t a = rng.between(4, hi);
  std::size_t b = rng.between(4, hi - 1);
  if (b >= a) ++b;
  return crossover_two_point_at(p1, p2, std::min(a, b), std::max(a, b),
                                exponent, cfg, rng);
}

ChildPair crossover_two_point_at(const Chromosome& p1, const Chromosome& p2,
                                 std::size_t p, std::size_t q,
                                 std::uint64_t exponent, const GaConfig& cfg,
                                 Rng& rng) {
  const std::size_t min_len = std::min(p1.size(), p2.size());
  if (p < 4 || q <= p || q >= min_len) {
    throw Error(ErrorKind::InvalidArgument, "crossover points out of range");
  }
  auto child_of = [&](const Chromosome& own, const Chromosome& donor) {
    Chromosome child = prefix_of(own, p);
    // 1-based positions p+1 .. q-1 from the donor, q onwards from own parent.
    replay_range(child, donor, p, q - 1, exponent, cfg, rng);
    replay_range(child, own, q - 1, own.size(), exponent, cfg, rng);
    return finish(std::move(child), exponent, cfg, rng);
  };
  Chromosome c1 = child_of(p1, p2);
  Chromosome c2 = child_of(p2, p1);
  return {std::move(c1), std::move(c2)};
}

ChildPair crossover_uniform(const Chromosome& p1, const Chromosome& p2,
                            std::uint64_t exponent, const GaConfig& cfg,
                            Rng& rng) {
  const std::size_t min_len = std::min(p1.size(), p2.size());
  if (min_len < 3) return {p1, p2};
  const auto mask = std::make_unique<bool[]>(min_len);
  for (std::size_t i = 0; i < min_len; ++i) mask[i] = rng.coin();
  return crossover_uniform_masked(p1, p2, {mask.get(), min_len}, exponent,
                                  cfg, rng);
}

ChildPair crossover_uniform_masked(const Chromosome& p1, const Chromosome& p2,
                                   std::span<const bool> mask,
                                   std::uint64_t exponent, const GaConfig& cfg,
                                   Rng& rng) {
  const std::size_t min_len = std::min(p1.size(), p2.size());
  if (mask.size() != min_len) {
    throw Error(ErrorKind::InvalidArgument, "mask length must equal the shorter parent");
  }
  if (min_len < 3) return {p1, p2};
  auto child_of = [&](const Chromosome& own, const Chromosome& other) {
    Chromosome child = prefix_of(own, 2);
    const Chromosome& third_from = mask[2] ? other : own;
    push_gene(child, third_from.rules[2]);
    for (std::size_t i = 3; i < min_len && child.last() != exponent; ++i) {
      if (mask[i]) {
        replay_gene(child, other.rules[i], RuleKind::Exchanged, exponent, cfg, rng);
      } else {
        replay_gene(child, own.rules[i], kind_for(own.rules[i].op), exponent,
                    cfg, rng);
      }
    }
    return finish(std::move(child), exponent, cfg, rng);
  };
  Chromosome c1 = child_of(p1, p2);
  Chromosome c2 = child_of(p2, p1);
  return {std::move(c1), std::move(c2)};
}

Chromosome mutate(const Chromosome& child, std::uint64_t exponent,
                  const GaConfig& cfg, Rng& rng) {
  if (child.size() < 3) return child;
  if (!(rng.unit() < cfg.mutation_rate)) return child;
  const std::size_t point = rng.between(3, child.size());
  return mutate_at(child, point, exponent, cfg, rng);
}

Chromosome mutate_at(const Chromosome& child, std::size_t point,
                     std::uint64_t exponent, const GaConfig& cfg, Rng& rng) {
  if (point < 3 || point > child.size()) {
    throw Error(ErrorKind::InvalidArgument, "mutation point out of range");
  }
  const Chromosome prefix = prefix_of(child, point);
  if (prefix.last() == exponent) return prefix;

  std::optional<Chromosome> best;
  for (std::uint32_t a = 0; a < cfg.n_mutants; ++a) {
    Chromosome mutant = prefix;
    auto partner = static_cast<std::uint32_t>(rng.below(point));
    if (overshoots(mutant, partner, exponent)) {
      partner = static_cast<std::uint32_t>(repair_partner(mutant.values, exponent));
    }
    push_gene(mutant, {RuleKind::Random, GeneOp::Random, partner});
    if (mutant.last() != exponent) {
      mutant = gene_generation(std::move(mutant), exponent, cfg, rng);
    }
    if (!best || mutant.size() < best->size()) best = std::move(mutant);
  }
  if (cfg.elitist_mutation && best->size() > child.size()) return child;
  return std::move(*best);
}

GaResult evolve(std::uint64_t exponent, const GaConfig& cfg) {
  validate(cfg);
  if (exponent == 0) {
    throw Error(ErrorKind::InvalidArgument, "exponent must be >= 1");
  }
  Rng rng(cfg.seed);
  const ChainLength bound = lower_bound(exponent);

  GaResult result;
  result.seed = cfg.seed;

  std::vector<Chromosome> population = initial_population(exponent, cfg, rng);
  result.evaluations = population.size();

  auto track = [&](const Chromosome& c) {
    if (result.best.values.empty() || c.size() < result.best.size()) {
      result.best = c;
    }
  };
  for (const auto& c : population) track(c);
  result.best_length_per_generation.push_back(fitness(result.best));

  auto done = [&] {
    return cfg.early_stop_at_lower_bound && fitness(result.best) == bound;
  };

  std::vector<Chromosome> children;
  children.reserve(cfg.population_size);
  for (std::uint32_t gen = 1; gen <= cfg.max_generations && !done(); ++gen) {
    for (std::size_t i = population.size(); i > 1; --i) {
      std::swap(population[i - 1], population[rng.below(i)]);
    }
    const RouletteWheel wheel(population);
    children.clear();
    while (children.size() < cfg.population_size) {
      const Chromosome& a = population[wheel.spin(rng)];
      const Chromosome& b = population[wheel.spin(rng)];
      auto [c1, c2] = crossover(a, b, exponent, cfg, rng);
      children.push_back(mutate(c1, exponent, cfg, rng));
      track(children.back());
      if (children.size() < cfg.population_size) {
        children.push_back(mutate(c2, exponent, cfg, rng));
        track(children.back());
      }
    }
    result.evaluations += children.size();
    population.swap(children);
    result.generations_run = gen;
    result.best_length_per_generation.push_back(fitness(result.best));
  }

  result.length = fitness(result.best);
  return result;
}

std::vector<std::uint64_t> replay_rules(std::span<const RuleTag> rules) {
  std::vector<std::uint64_t> values;
  values.reserve(rules.size());
  for (std::size_t i = 0; i < rules.size(); ++i) {
    if (i == 0) {
      values.push_back(1);
      continue;
    }
    if (rules[i].partner >= i) {
      throw Error(ErrorKind::InvalidArgument, "rule partner must precede its gene");
    }
    values.push_back(values[i - 1] + values[rules[i].partner]);
  }
  return values;
}

}  // namespace addchain
