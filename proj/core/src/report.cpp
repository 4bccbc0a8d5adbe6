#include "addchain/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "addchain/error.hpp"

namespace addchain {
namespace {

using Json = nlohmann::ordered_json;

constexpr std::string_view kScopes[] = {"range_max", "exponent", "bits"};

bool is_scope(std::string_view key) {
  return std::find(std::begin(kScopes), std::end(kScopes), key) != std::end(kScopes);
}

Json config_to_json(const GaConfig& c) {
  return Json{{"population_size", c.population_size},
              {"max_generations", c.max_generations},
              {"p_single", c.p_single},
              {"p_two", c.p_two},
              {"p_uniform", c.p_uniform},
              {"crossover_rate", c.crossover_rate},
              {"mutation_rate", c.mutation_rate},
              {"n_mutants", c.n_mutants},
              {"p_double", c.p_double},
              {"p_add", c.p_add},
              {"p_random", c.p_random},
              {"early_stop_at_lower_bound", c.early_stop_at_lower_bound},
              {"elitist_mutation", c.elitist_mutation},
              {"seed", c.seed}};
}

GaConfig config_from_json(const Json& j) {
  GaConfig c;
  c.population_size = j.at("population_size").get<std::uint32_t>();
  c.max_generations = j.at("max_generations").get<std::uint32_t>();
  c.p_single = j.at("p_single").get<double>();
  c.p_two = j.at("p_two").get<double>();
  c.p_uniform = j.at("p_uniform").get<double>();
  c.crossover_rate = j.at("crossover_rate").get<double>();
  c.mutation_rate = j.at("mutation_rate").get<double>();
  c.n_mutants = j.at("n_mutants").get<std::uint32_t>();
  c.p_double = j.at("p_double").get<double>();
  c.p_add = j.at("p_add").get<double>();
  c.p_random = j.at("p_random").get<double>();
  c.early_stop_at_lower_bound = j.at("early_stop_at_lower_bound").get<bool>();
  c.elitist_mutation = j.at("elitist_mutation").get<bool>();
  c.seed = j.at("seed").get<std::uint64_t>();
  return c;
}

std::string format_metric(const Metric& m) {
  char buf[64];
  if (m.decimals == 0) {
    std::snprintf(buf, sizeof buf, "%.0f", m.value);
  } else {
    std::snprintf(buf, sizeof buf, "%.*f", m.decimals, m.value);
  }
  return buf;
}

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string join_values(const std::vector<std::uint64_t>& values) {
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i) out += ' ';
    out += std::to_string(values[i]);
  }
  return out;
}

}  // namespace

const Metric* ReportRow::metric(std::string_view name) const noexcept {
  for (const auto& m : metrics) {
    if (m.name == name) return &m;
  }
  return nullptr;
}

ReportFormat parse_report_format(std::string_view name) {
  if (name == "json") return ReportFormat::Json;
  if (name == "csv") return ReportFormat::Csv;
  throw Error(ErrorKind::InvalidArgument,
              "unknown report format '" + std::string(name) + "'");
}

std::string to_json(const Report& report) {
  Json rows = Json::array();
  for (const auto& row : report.rows) {
    if (!is_scope(row.scope)) {
      throw Error(ErrorKind::InvalidArgument, "unknown row scope '" + row.scope + "'");
    }
    Json r;
    r["method"] = row.method;
    r[row.scope] = row.parameter;
    for (const auto& m : row.metrics) {
      if (m.decimals == 0) {
        r[m.name] = static_cast<std::int64_t>(std::llround(m.value));
      } else {
        r[m.name] = m.value;
      }
    }
    if (!row.chain.empty()) r["chain"] = row.chain;
    if (!row.note.empty()) r["note"] = row.note;
    rows.push_back(std::move(r));
  }
  Json doc;
  doc["meta"] = Json{{"version", report.meta.version},
                     {"seed", report.meta.seed},
                     {"scale", report.meta.scale},
                     {"config", config_to_json(report.meta.config)}};
  doc["rows"] = std::move(rows);
  return doc.dump(2) + "\n";
}

Report report_from_json(std::string_view text) {
  try {
    const Json doc = Json::parse(text);
    Report report;
    const Json& meta = doc.at("meta");
    report.meta.version = meta.at("version").get<std::string>();
    report.meta.seed = meta.at("seed").get<std::uint64_t>();
    report.meta.scale = meta.value("scale", std::string{});
    report.meta.config = config_from_json(meta.at("config"));
    for (const Json& r : doc.at("rows")) {
      ReportRow row;
      for (const auto& [key, value] : r.items()) {
        if (key == "method") {
          row.method = value.get<std::string>();
        } else if (is_scope(key)) {
          row.scope = key;
          row.parameter = value.get<std::uint64_t>();
        } else if (key == "chain") {
          row.chain = value.get<std::vector<std::uint64_t>>();
        } else if (key == "note") {
          row.note = value.get<std::string>();
        } else if (value.is_number_float()) {
          row.metrics.push_back({key, value.get<double>(), 2});
        } else {
          row.metrics.push_back({key, static_cast<double>(value.get<std::int64_t>()), 0});
        }
      }
      report.rows.push_back(std::move(row));
    }
    return report;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorKind::InvalidArgument, std::string("malformed report: ") + e.what());
  }
}

std::string to_csv(const Report& report) {
  std::vector<std::string> metric_names;
  bool any_chain = false;
  bool any_note = false;
  bool mixed_scope = false;
  for (const auto& row : report.rows) {
    mixed_scope |= row.scope != report.rows.front().scope;
    any_chain |= !row.chain.empty();
    any_note |= !row.note.empty();
    for (const auto& m : row.metrics) {
      if (std::find(metric_names.begin(), metric_names.end(), m.name) ==
          metric_names.end()) {
        metric_names.push_back(m.name);
      }
    }
  }

  std::string out = "method,";
  out += mixed_scope || report.rows.empty() ? "scope,parameter"
                                            : report.rows.front().scope;
  for (const auto& name : metric_names) out += "," + name;
  if (any_chain) out += ",chain";
  if (any_note) out += ",note";
  out += "\n";

  for (const auto& row : report.rows) {
    out += csv_escape(row.method) + ",";
    if (mixed_scope) out += row.scope + ",";
    out += std::to_string(row.parameter);
    for (const auto& name : metric_names) {
      out += ",";
      if (const Metric* m = row.metric(name)) out += format_metric(*m);
    }
    if (any_chain) out += "," + join_values(row.chain);
    if (any_note) out += "," + csv_escape(row.note);
    out += "\n";
  }
  return out;
}

std::string render(const Report& report, ReportFormat format) {
  return format == ReportFormat::Json ? to_json(report) : to_csv(report);
}

void write_report(const Report& report, ReportFormat format,
                  const std::filesystem::path& path) {
  if (report.rows.empty()) {
    throw Error(ErrorKind::InvalidArgument, "refusing to write an empty report");
  }
  const std::string text = render(report, format);
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(ErrorKind::IoError, "cannot open " + path.string());
  out << text;
  if (!out) throw Error(ErrorKind::IoError, "cannot write " + path.string());
}

}  // namespace addchain
