#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

#include "addchain/ga_config.hpp"

namespace addchain {

struct Metric {
  std::string name;
  double value = 0.0;
  /// 0 for counts and totals, 2 for averages.
  int decimals = 0;

  friend bool operator==(const Metric&, const Metric&) = default;
};

struct ReportRow {
  std::string method;
  /// What `parameter` means: "range_max", "exponent" or "bits".
  std::string scope;
  std::uint64_t parameter = 0;
  std::vector<Metric> metrics;
  std::vector<std::uint64_t> chain;
  std::string note;

  const Metric* metric(std::string_view name) const noexcept;
  friend bool operator==(const ReportRow&, const ReportRow&) = default;
};

struct ReportMeta {
  std::string version = "1";
  std::uint64_t seed = 0;
  GaConfig config;
  std::string scale;

  friend bool operator==(const ReportMeta&, const ReportMeta&) = default;
};

struct Report {
  ReportMeta meta;
  std::vector<ReportRow> rows;

  friend bool operator==(const Report&, const Report&) = default;
};

enum class ReportFormat { Json, Csv };

/// Throws Error(InvalidArgument) for anything other than "json" / "csv".
ReportFormat parse_report_format(std::string_view name);

/// {"meta": {...}, "rows": [...]}, pretty printed, trailing newline.
std::string to_json(const Report& report);
/// Throws Error(InvalidArgument) on malformed input.
Report report_from_json(std::string_view text);

/// Header row then one row per report row. Columns: method, the scope name
/// (or scope,parameter when rows mix scopes), every metric name in order of
/// first appearance, then chain and note when any row carries them.
std::string to_csv(const Report& report);

std::string render(const Report& report, ReportFormat format);

/// Empty reports throw Error(InvalidArgument) and write nothing; write
/// failures throw Error(IoError).
void write_report(const Report& report, ReportFormat format,
                  const std::filesystem::path& path);

}  // namespace addchain
