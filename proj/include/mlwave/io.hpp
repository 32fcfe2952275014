#pragma once

// File formats used by the command-line tool.
//
//  series      CSV, header + two numeric columns (t, y); LF or CRLF.
//  model       JSON {"waves": [{"a", "b", "y_sat"}, ...], "meta": {...}}
//  report      JSON {"max_abs_error", "rmse", "r_squared", "residuals", ...}
//  trace       JSON, one record per decomposition pass
//  scalogram   CSV (header row of shifts, first column scales) or JSON
//
// Numbers are written with 17 significant digits and a '.' decimal point
// regardless of locale.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "mlwave/diffcwt.hpp"
#include "mlwave/extract.hpp"
#include "mlwave/refine.hpp"
#include "mlwave/scurve.hpp"

namespace mlwave::io {

struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<double>> columns;
};

struct ModelMeta {
  std::string source;
  std::string created;
  std::string tool_version;
};

std::string format_number(double value, int significant_digits = 17);
double parse_number(std::string_view text, std::size_t line = 0);

Table read_table(std::istream& in);
void write_table(std::ostream& out, const Table& table);

SampledSeries read_series(std::istream& in);
SampledSeries read_series(const std::filesystem::path& path);
void write_series(std::ostream& out, const SampledSeries& series);
void write_series(const std::filesystem::path& path, const SampledSeries& series);

nlohmann::json model_to_json(const MultilogisticModel& m, const ModelMeta& meta);
MultilogisticModel model_from_json(const nlohmann::json& j, ModelMeta* meta = nullptr);
MultilogisticModel read_model(const std::filesystem::path& path, ModelMeta* meta = nullptr);
void write_model(const std::filesystem::path& path, const MultilogisticModel& m, const ModelMeta& meta);

nlohmann::json report_to_json(const FitReport& report);
FitReport report_from_json(const nlohmann::json& j);

nlohmann::json trace_to_json(const DecompositionTrace& trace);
DecompositionTrace trace_from_json(const nlohmann::json& j);

void write_scalogram_csv(std::ostream& out, const Scalogram& s);
Scalogram read_scalogram_csv(std::istream& in);
nlohmann::json scalogram_to_json(const Scalogram& s);
Scalogram scalogram_from_json(const nlohmann::json& j);

nlohmann::json read_json(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const nlohmann::json& j);

/// Current UTC time as ISO-8601.
std::string utc_timestamp();

}  // namespace mlwave::io
