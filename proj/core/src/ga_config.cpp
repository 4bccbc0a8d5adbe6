#include "addchain/ga_config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <string>

#include "addchain/error.hpp"

namespace addchain {
namespace {

constexpr double kSumTolerance = 1e-9;

std::string_view trim(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

[[noreturn]] void bad_value(std::string_view key, std::string_view value) {
  throw Error(ErrorKind::ConfigInvalid, "invalid value '" + std::string(value) +
                                            "' for " + std::string(key));
}

template <typename T>
T parse_unsigned(std::string_view key, std::string_view value) {
  T out{};
  const auto [ptr, ec] =
      std::from_chars(value.data(), value.data() + value.size(), out);
  if (ec != std::errc{} || ptr != value.data() + value.size()) {
    bad_value(key, value);
  }
  return out;
}

double parse_double(std::string_view key, std::string_view value) {
  // std::from_chars for double is missing from some libstdc++ releases.
  const std::string copy(value);
  char* end = nullptr;
  const double out = std::strtod(copy.c_str(), &end);
  if (copy.empty() || end != copy.c_str() + copy.size() || !std::isfinite(out)) {
    bad_value(key, value);
  }
  return out;
}

bool parse_bool(std::string_view key, std::string_view value) {
  if (value == "true" || value == "1") return true;
  if (value == "false" || value == "0") return false;
  bad_value(key, value);
}

std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void check_probability(std::string_view name, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorKind::ConfigInvalid,
                std::string(name) + " must lie in [0, 1], got " + format_double(p));
  }
}

}  // namespace

void validate(const GaConfig& cfg) {
  if (cfg.population_size < 2) {
    throw Error(ErrorKind::ConfigInvalid, "population_size must be >= 2");
  }
  if (cfg.max_generations < 1) {
    throw Error(ErrorKind::ConfigInvalid, "max_generations must be >= 1");
  }
  if (cfg.n_mutants < 1) {
    throw Error(ErrorKind::ConfigInvalid, "n_mutants must be >= 1");
  }
  check_probability("p_single", cfg.p_single);
  check_probability("p_two", cfg.p_two);
  check_probability("p_uniform", cfg.p_uniform);
  check_probability("crossover_rate", cfg.crossover_rate);
  check_probability("mutation_rate", cfg.mutation_rate);
  check_probability("p_double", cfg.p_double);
  check_probability("p_add", cfg.p_add);
  check_probability("p_random", cfg.p_random);
  if (std::abs(cfg.p_single + cfg.p_two + cfg.p_uniform - 1.0) > kSumTolerance) {
    throw Error(ErrorKind::ConfigInvalid,
                "p_single + p_two + p_uniform must equal 1");
  }
  if (std::abs(cfg.p_double + cfg.p_add + cfg.p_random - 1.0) > kSumTolerance) {
    throw Error(ErrorKind::ConfigInvalid,
                "p_double + p_add + p_random must equal 1");
  }
}

void set_ga_config_field(GaConfig& cfg, std::string_view key,
                         std::string_view value) {
  value = trim(value);
  if (key == "population_size") {
    cfg.population_size = parse_unsigned<std::uint32_t>(key, value);
  } else if (key == "max_generations") {
    cfg.max_generations = parse_unsigned<std::uint32_t>(key, value);
  } else if (key == "p_single") {
    cfg.p_single = parse_double(key, value);
  } else if (key == "p_two") {
    cfg.p_two = parse_double(key, value);
  } else if (key == "p_uniform") {
    cfg.p_uniform = parse_double(key, value);
  } else if (key == "crossover_rate") {
    cfg.crossover_rate = parse_double(key, value);
  } else if (key == "mutation_rate") {
    cfg.mutation_rate = parse_double(key, value);
  } else if (key == "n_mutants") {
    cfg.n_mutants = parse_unsigned<std::uint32_t>(key, value);
  } else if (key == "p_double") {
    cfg.p_double = parse_double(key, value);
  } else if (key == "p_add") {
    cfg.p_add = parse_double(key, value);
  } else if (key == "p_random") {
    cfg.p_random = parse_double(key, value);
  } else if (key == "early_stop_at_lower_bound") {
    cfg.early_stop_at_lower_bound = parse_bool(key, value);
  } else if (key == "elitist_mutation") {
    cfg.elitist_mutation = parse_bool(key, value);
  } else if (key == "seed") {
    cfg.seed = parse_unsigned<std::uint64_t>(key, value);
  } else {
    throw Error(ErrorKind::ConfigInvalid,
                "unknown config key '" + std::string(key) + "'");
  }
}

GaConfig parse_ga_config(std::string_view text, GaConfig base) {
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    const auto eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view{}
                                         : text.substr(eol + 1);
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(ErrorKind::ConfigInvalid,
                  "line " + std::to_string(line_no) + ": expected key = value");
    }
    set_ga_config_field(base, trim(line.substr(0, eq)), line.substr(eq + 1));
  }
  return base;
}

std::string format_ga_config(const GaConfig& cfg) {
  std::string out;
  auto line = [&](std::string_view key, const std::string& value) {
    out.append(key).append(" = ").append(value).append("\n");
  };
  line("population_size", std::to_string(cfg.population_size));
  line("max_generations", std::to_string(cfg.max_generations));
  line("p_single", format_double(cfg.p_single));
  line("p_two", format_double(cfg.p_two));
  line("p_uniform", format_double(cfg.p_uniform));
  line("crossover_rate", format_double(cfg.crossover_rate));
  line("mutation_rate", format_double(cfg.mutation_rate));
  line("n_mutants", std::to_string(cfg.n_mutants));
  line("p_double", format_double(cfg.p_double));
  line("p_add", format_double(cfg.p_add));
  line("p_random", format_double(cfg.p_random));
  line("early_stop_at_lower_bound", cfg.early_stop_at_lower_bound ? "true" : "false");
  line("elitist_mutation", cfg.elitist_mutation ? "true" : "false");
  line("seed", std::to_string(cfg.seed));
  return out;
}

}  // namespace addchain
