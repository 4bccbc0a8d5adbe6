#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace addchain {

/// Every knob of the genetic search. Defaults are the published parameter
/// set; the crossover and mutation rates are read as probabilities 0.4 and
/// 1.0.
struct GaConfig {
  std::uint32_t population_size = 200;
  std::uint32_t max_generations = 300;

  // Crossover variant roulette.
  double p_single = 0.20;
  double p_two = 0.35;
  double p_uniform = 0.45;

  double crossover_rate = 0.4;
  double mutation_rate = 1.0;
  std::uint32_t n_mutants = 4;

  // Gene rule roulette.
  double p_double = 0.65;
  double p_add = 0.25;
  double p_random = 0.10;

  bool early_stop_at_lower_bound = true;
  /// Keep the original child when every mutant is longer.
  bool elitist_mutation = false;

  std::uint64_t seed = 0;

  friend bool operator==(const GaConfig&, const GaConfig&) = default;
};

/// Throws Error(ConfigInvalid) describing the first violated invariant.
void validate(const GaConfig& cfg);

/// Applies `key = value` lines on top of `base`. '#' starts a comment; blank
/// lines are ignored; unknown keys and unparsable values throw
/// Error(ConfigInvalid). The result is not validated.
GaConfig parse_ga_config(std::string_view text, GaConfig base = {});

/// Sets a single field by name. Same errors as parse_ga_config.
void set_ga_config_field(GaConfig& cfg, std::string_view key,
                         std::string_view value);

/// Inverse of parse_ga_config: one `key = value` line per field.
std::string format_ga_config(const GaConfig& cfg);

}  // namespace addchain
