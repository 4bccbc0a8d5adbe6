#include "cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "addchain/baselines.hpp"
#include "addchain/bench.hpp"
#include "addchain/chain.hpp"
#include "addchain/error.hpp"
#include "addchain/ga.hpp"
#include "addchain/modexp.hpp"
#include "addchain/oracle.hpp"
#include "addchain/report.hpp"

namespace addchain::cli {
namespace {

using Json = nlohmann::ordered_json;

/// GaConfig plus the process-level knobs shared by every subcommand.
struct CliConfig {
  std::string config_file;
  std::string format = "json";
  std::string out_path;
  std::string cache_path;
  unsigned workers = 1;

  // Flag overrides, applied on top of the config file.
  std::optional<std::uint64_t> seed;
  std::optional<std::uint32_t> population_size;
  std::optional<std::uint32_t> max_generations;
  std::optional<std::uint32_t> n_mutants;
  std::optional<double> p_single, p_two, p_uniform;
  std::optional<double> crossover_rate, mutation_rate;
  std::optional<double> p_double, p_add, p_random;
  bool no_early_stop = false;
  bool elitist_mutation = false;

  GaConfig ga() const {
    GaConfig cfg;
    if (!config_file.empty()) {
      std::ifstream in(config_file);
      if (!in) throw Error(ErrorKind::IoError, "cannot open " + config_file);
      std::ostringstream text;
      text << in.rdbuf();
      cfg = parse_ga_config(text.str(), cfg);
    }
    if (seed) cfg.seed = *seed;
    if (population_size) cfg.population_size = *population_size;
    if (max_generations) cfg.max_generations = *max_generations;
    if (n_mutants) cfg.n_mutants = *n_mutants;
    if (p_single) cfg.p_single = *p_single;
    if (p_two) cfg.p_two = *p_two;
    if (p_uniform) cfg.p_uniform = *p_uniform;
    if (crossover_rate) cfg.crossover_rate = *crossover_rate;
    if (mutation_rate) cfg.mutation_rate = *mutation_rate;
    if (p_double) cfg.p_double = *p_double;
    if (p_add) cfg.p_add = *p_add;
    if (p_random) cfg.p_random = *p_random;
    if (no_early_stop) cfg.early_stop_at_lower_bound = false;
    if (elitist_mutation) cfg.elitist_mutation = true;
    validate(cfg);
    return cfg;
  }

  BenchOptions bench() const {
    BenchOptions opts;
    opts.workers = workers;
    if (!cache_path.empty()) opts.oracle_cache = cache_path;
    return opts;
  }
};

void add_ga_options(CLI::App& cmd, CliConfig& c) {
  cmd.add_option("--config", c.config_file, "key = value file with GaConfig fields")
      ->check(CLI::ExistingFile);
  cmd.add_option("--seed", c.seed, "master seed");
  cmd.add_option("--population-size", c.population_size);
  cmd.add_option("--max-generations", c.max_generations);
  cmd.add_option("--n-mutants", c.n_mutants);
  cmd.add_option("--p-single", c.p_single);
  cmd.add_option("--p-two", c.p_two);
  cmd.add_option("--p-uniform", c.p_uniform);
  cmd.add_option("--crossover-rate", c.crossover_rate);
  cmd.add_option("--mutation-rate", c.mutation_rate);
  cmd.add_option("--p-double", c.p_double);
  cmd.add_option("--p-add", c.p_add);
  cmd.add_option("--p-random", c.p_random);
  cmd.add_flag("--no-early-stop", c.no_early_stop, "run all generations");
  cmd.add_flag("--elitist-mutation", c.elitist_mutation,
               "keep the original child when all mutants are longer");
}

void add_output_options(CLI::App& cmd, CliConfig& c) {
  cmd.add_option("--format", c.format, "json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
  cmd.add_option("--out", c.out_path, "also write the report to this file");
}

void add_bench_options(CLI::App& cmd, CliConfig& c) {
  cmd.add_option("--workers", c.workers, "concurrent GA / oracle tasks")
      ->check(CLI::PositiveNumber);
  cmd.add_option("--cache", c.cache_path, "oracle table cache file");
}

void emit_report(const Report& report, const CliConfig& c, std::ostream& out) {
  const ReportFormat format = parse_report_format(c.format);
  out << render(report, format);
  if (!c.out_path.empty()) write_report(report, format, c.out_path);
}

void print_chain(std::ostream& out, const std::string& header,
                 std::span<const std::uint64_t> values) {
  out << "# " << header << "\n" << format_values(values) << "\n";
}

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int exit_code_for(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidChain:
    case ErrorKind::NoSummandPair:
    case ErrorKind::ConfigInvalid:
    case ErrorKind::RadixInvalid:
    case ErrorKind::IoError:
      return kExitInvalid;
    default:
      return kExitInternal;
  }
}

}  // namespace

int run(std::span<const std::string> args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Short addition chains: genetic search, exact oracle, baselines"};
  app.name(args.empty() ? "addchain" : args.front());
  app.require_subcommand(1);

  CliConfig c;

  // ga
  auto* ga = app.add_subcommand("ga", "run the genetic search");
  std::optional<std::uint64_t> ga_exponent;
  std::optional<std::uint64_t> ga_range;
  std::uint32_t ga_runs = 1;
  auto* ga_e = ga->add_option("--exponent", ga_exponent, "single exponent");
  auto* ga_p = ga->add_option("--range-max", ga_range, "accumulate over [1, P]");
  ga_e->excludes(ga_p);
  ga->add_option("--runs", ga_runs, "independent runs for --range-max")
      ->check(CLI::PositiveNumber)
      ->needs(ga_p);
  add_ga_options(*ga, c);
  add_output_options(*ga, c);
  add_bench_options(*ga, c);

  // oracle
  auto* oracle = app.add_subcommand("oracle", "exact shortest chains");
  std::optional<std::uint64_t> oracle_exponent;
  std::optional<std::uint64_t> oracle_limit;
  std::uint64_t oracle_budget = kUnlimitedNodes;
  bool oracle_lengths = false;
  auto* or_e = oracle->add_option("--exponent", oracle_exponent);
  auto* or_l = oracle->add_option("--limit", oracle_limit, "table over [1, P]");
  or_e->excludes(or_l);
  oracle->add_option("--budget", oracle_budget, "node limit for --exponent");
  oracle->add_flag("--lengths", oracle_lengths, "list l(n) for every n");
  add_output_options(*oracle, c);
  add_bench_options(*oracle, c);

  // baseline
  auto* baseline = app.add_subcommand("baseline", "binary or m-ary chain");
  std::string baseline_method;
  std::uint32_t baseline_radix = 4;
  std::uint64_t baseline_exponent = 0;
  baseline->add_option("--method", baseline_method)
      ->required()
      ->check(CLI::IsMember({"binary", "mary"}));
  baseline->add_option("--radix", baseline_radix, "m for the m-ary method");
  baseline->add_option("--exponent", baseline_exponent)->required();

  // bench
  auto* bench = app.add_subcommand("bench", "reproduce a results table");
  std::string bench_table;
  std::string bench_scale = "ci";
  bench->add_option("table", bench_table)
      ->required()
      ->check(CLI::IsMember({"table1", "table2", "table3", "table4"}));
  bench->add_option("--scale", bench_scale)->check(CLI::IsMember({"ci", "paper"}));
  add_ga_options(*bench, c);
  add_output_options(*bench, c);
  add_bench_options(*bench, c);

  // validate
  auto* validate_cmd = app.add_subcommand("validate", "check a chain file");
  std::string chain_file;
  std::uint64_t validate_exponent = 0;
  validate_cmd->add_option("--file", chain_file)->required();
  validate_cmd->add_option("--exponent", validate_exponent)->required();

  // modexp
  auto* modexp = app.add_subcommand("modexp", "evaluate base^e mod N along a chain");
  std::string modexp_base;
  std::string modexp_mod;
  std::optional<std::uint64_t> modexp_exponent;
  modexp->add_option("--file", chain_file)->required();
  modexp->add_option("--base", modexp_base)->required();
  modexp->add_option("--mod", modexp_mod)->required();
  modexp->add_option("--exponent", modexp_exponent, "defaults to the last chain value");

  std::vector<const char*> argv;
  argv.reserve(args.size() + 1);
  if (args.empty()) argv.push_back("addchain");
  for (const auto& a : args) argv.push_back(a.c_str());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitInvalid;
  }

  try {
    Stopwatch clock;
    if (ga->parsed()) {
      const GaConfig cfg = c.ga();
      if (ga_exponent) {
        const GaResult r = evolve(*ga_exponent, cfg);
        print_chain(out,
                    "exponent " + std::to_string(*ga_exponent) + " length " +
                        std::to_string(r.length) + " generations " +
                        std::to_string(r.generations_run) + " seed " +
                        std::to_string(r.seed),
                    r.best.values);
        if (!c.out_path.empty()) {
          Report report;
          report.meta.seed = cfg.seed;
          report.meta.config = cfg;
          report.rows.push_back({"GADSA", "exponent", *ga_exponent,
                                 {{"length", static_cast<double>(r.length), 0},
                                  {"generations", static_cast<double>(r.generations_run), 0},
                                  {"evaluations", static_cast<double>(r.evaluations), 0}},
                                 r.best.values, {}});
          write_report(report, parse_report_format(c.format), c.out_path);
        }
      } else if (ga_range) {
        const RunStats s = run_stats(Method::gadsa(), *ga_range, ga_runs, cfg, c.bench());
        Report report;
        report.meta.seed = cfg.seed;
        report.meta.config = cfg;
        report.rows.push_back({"GADSA", "range_max", *ga_range,
                               {{"best", static_cast<double>(s.best), 0},
                                {"average", std::round(s.average * 100) / 100, 2},
                                {"median", std::round(s.median * 100) / 100, 2},
                                {"worst", static_cast<double>(s.worst), 0},
                                {"runs", static_cast<double>(s.runs), 0}},
                               {}, {}});
        emit_report(report, c, out);
      } else {
        err << "ga: one of --exponent or --range-max is required\n";
        return kExitInvalid;
      }
    } else if (oracle->parsed()) {
      if (oracle_exponent) {
        const OracleResult r = search_optimal(*oracle_exponent, oracle_budget);
        print_chain(out,
                    "exponent " + std::to_string(*oracle_exponent) + " length " +
                        std::to_string(r.length()) + (r.proven ? " proven" : " unproven") +
                        " nodes " + std::to_string(r.nodes),
                    r.chain.values());
      } else if (oracle_limit) {
        const OptimalTable table =
            optimal_table(*oracle_limit, c.bench().oracle_cache, c.workers);
        const std::uint64_t total = table.accumulated(*oracle_limit);
        if (c.format == "csv") {
          std::ostringstream csv;
          if (oracle_lengths) {
            csv << "n,length\n";
            for (std::uint64_t n = 1; n <= table.limit(); ++n) {
              csv << n << "," << table.length(n) << "\n";
            }
          } else {
            csv << "limit,accumulated\n" << *oracle_limit << "," << total << "\n";
          }
          out << csv.str();
          if (!c.out_path.empty()) std::ofstream(c.out_path) << csv.str();
        } else {
          Json j{{"limit", *oracle_limit}, {"accumulated", total}};
          if (oracle_lengths) {
            j["lengths"] = std::vector<std::uint16_t>(table.lengths().begin(),
                                                      table.lengths().end());
          }
          out << j.dump(2) << "\n";
          if (!c.out_path.empty()) std::ofstream(c.out_path) << j.dump(2) << "\n";
        }
      } else {
        err << "oracle: one of --exponent or --limit is required\n";
        return kExitInvalid;
      }
    } else if (baseline->parsed()) {
      const AdditionChain chain = baseline_method == "binary"
                                      ? binary_chain(baseline_exponent)
                                      : mary_chain(baseline_exponent, Radix(baseline_radix));
      const std::string name =
          baseline_method == "binary" ? "binary" : "mary" + std::to_string(baseline_radix);
      print_chain(out,
                  "method " + name + " exponent " + std::to_string(baseline_exponent) +
                      " length " + std::to_string(chain.additions()),
                  chain.values());
    } else if (bench->parsed()) {
      const GaConfig cfg = c.ga();
      const TableScale scale = table_scale(bench_scale);
      const BenchOptions opts = c.bench();
      Report report;
      if (bench_table == "table1") {
        report = reproduce_table1(scale, cfg, opts);
      } else if (bench_table == "table2") {
        report = reproduce_table2(scale, cfg, opts);
      } else if (bench_table == "table3") {
        report = reproduce_table3(scale, cfg, opts);
      } else {
        report = reproduce_table4(scale, cfg, opts);
      }
      emit_report(report, c, out);
    } else if (validate_cmd->parsed()) {
      const std::vector<std::uint64_t> values = read_chain_file(chain_file);
      const ValidationReport report = validate_chain(values, validate_exponent);
      Json violations = Json::array();
      for (const Violation& v : report.violations) {
        violations.push_back(
            {{"position", v.position}, {"kind", std::string(to_string(v.kind))}, {"detail", v.detail}});
      }
      const Json j{{"exponent", validate_exponent},
                   {"valid", report.valid()},
                   {"additions", values.empty() ? 0 : values.size() - 1},
                   {"violations", violations}};
      out << j.dump(2) << "\n";
      return report.valid() ? kExitOk : kExitInvalid;
    } else if (modexp->parsed()) {
      const std::vector<std::uint64_t> values = read_chain_file(chain_file);
      if (values.empty()) throw Error(ErrorKind::InvalidChain, "chain file is empty");
      const std::uint64_t e = modexp_exponent.value_or(values.back());
      const ModContext ctx(parse_decimal(modexp_base), parse_decimal(modexp_mod));
      const ModexpResult r = execute(values, e, ctx);
      const bool agrees = r.value == reference_modexp(ctx.base(), e, ctx.modulus());
      const Json j{{"exponent", e},
                   {"result", r.value.str()},
                   {"multiplications", r.multiplications},
                   {"matches_reference", agrees}};
      out << j.dump(2) << "\n";
      if (!agrees) return kExitInternal;
    }
    err << "elapsed " << clock.seconds() << " s\n";
    return kExitOk;
  } catch (const Error& e) {
    err << "error (" << to_string(e.kind()) << "): " << e.what() << "\n";
    return exit_code_for(e.kind());
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInternal;
  }
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  std::vector<std::string> args(argv, argv + argc);
  return run(args, out, err);
}

}  // namespace addchain::cli
