#include "mlwave/io.hpp"

#include <charconv>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include "mlwave/error.hpp"

namespace mlwave::io {

using nlohmann::json;

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> fields;
  std::size_t start = 0;
  while (true) {
    const auto comma = line.find(',', start);
    fields.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos
                                                                              : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return fields;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "' for reading");
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  return out;
}

json wave_to_json(const LogisticWave& w) { return {{"a", w.a}, {"b", w.b}, {"y_sat", w.y_sat}}; }

LogisticWave wave_from_json(const json& j) {
  return {j.at("a").get<double>(), j.at("b").get<double>(), j.at("y_sat").get<double>()};
}

json extremum_to_json(const ScalogramExtremum& e) {
  return {{"a", e.a},
          {"b", e.b},
          {"index", e.index_value},
          {"kind", e.kind == ExtremumKind::maximum ? "maximum" : "minimum"},
          {"row", e.row},
          {"col", e.col}};
}

ScalogramExtremum extremum_from_json(const json& j) {
  ScalogramExtremum e;
  e.a = j.at("a").get<double>();
  e.b = j.at("b").get<double>();
  e.index_value = j.at("index").get<double>();
  e.kind = j.at("kind").get<std::string>() == "minimum" ? ExtremumKind::minimum : ExtremumKind::maximum;
  e.row = j.value("row", std::size_t{0});
  e.col = j.value("col", std::size_t{0});
  return e;
}

}  // namespace

std::string format_number(double value, int significant_digits) {
  char buffer[64];
  const auto r = std::to_chars(buffer, buffer + sizeof buffer, value, std::chars_format::general,
                               significant_digits);
  return std::string(buffer, r.ptr);
}

double parse_number(std::string_view text, std::size_t line) {
  text = trim(text);
  if (!text.empty() && text.front() == '+') text.remove_prefix(1);
  double value = 0.0;
  const auto r = std::from_chars(text.data(), text.data() + text.size(), value);
  if (r.ec != std::errc{} || r.ptr != text.data() + text.size())
    throw ParseError("not a number: '" + std::string(text) + "'", line);
  if (!std::isfinite(value)) throw ParseError("non-finite number: '" + std::string(text) + "'", line);
  return value;
}

Table read_table(std::istream& in) {
  Table table;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view = line;
    if (line_no == 1 && view.starts_with("\xEF\xBB\xBF")) view.remove_prefix(3);
    if (trim(view).empty()) continue;
    const auto fields = split_fields(view);
    if (!have_header) {
      for (auto f : fields) {
        if (f.empty()) throw ParseError("empty header field", line_no);
        table.header.emplace_back(f);
      }
      table.columns.resize(table.header.size());
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size())
      throw ParseError("expected " + std::to_string(table.header.size()) + " fields, found " +
                           std::to_string(fields.size()),
                       line_no);
    for (std::size_t c = 0; c < fields.size(); ++c) table.columns[c].push_back(parse_number(fields[c], line_no));
  }
  if (!have_header) throw ParseError("missing header row", 0);
  return table;
}

void write_table(std::ostream& out, const Table& table) {
  for (std::size_t c = 0; c < table.header.size(); ++c) out << (c ? "," : "") << table.header[c];
  out << '\n';
  const std::size_t rows = table.columns.empty() ? 0 : table.columns.front().size();
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < table.columns.size(); ++c)
      out << (c ? "," : "") << format_number(table.columns[c][r]);
    out << '\n';
  }
}

SampledSeries read_series(std::istream& in) {
  auto table = read_table(in);
  if (table.header.size() != 2)
    throw ParseError("series file needs exactly two columns (t,y), found " + std::to_string(table.header.size()), 1);
  for (const auto& name : table.header) {
    double ignored = 0.0;
    const auto r = std::from_chars(name.data(), name.data() + name.size(), ignored);
    if (r.ec == std::errc{}) throw ParseError("series file is missing its header row", 1);
  }
  auto& t = table.columns[0];
  for (std::size_t i = 1; i < t.size(); ++i)
    if (!(t[i] > t[i - 1]))
      throw ParseError("t not strictly increasing", i + 2);
  return SampledSeries(std::move(table.columns[0]), std::move(table.columns[1]));
}

SampledSeries read_series(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_series(in);
}

void write_series(std::ostream& out, const SampledSeries& series) {
  write_table(out, Table{{"t", "y"}, {series.t, series.y}});
}

void write_series(const std::filesystem::path& path, const SampledSeries& series) {
  auto out = open_out(path);
  write_series(out, series);
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

json model_to_json(const MultilogisticModel& m, const ModelMeta& meta) {
  json waves = json::array();
  for (const auto& w : m.waves) waves.push_back(wave_to_json(w));
  return {{"waves", waves},
          {"meta", {{"source", meta.source}, {"created", meta.created}, {"tool_version", meta.tool_version}}}};
}

MultilogisticModel model_from_json(const json& j, ModelMeta* meta) {
  if (!j.is_object() || !j.contains("waves") || !j.at("waves").is_array())
    throw ParseError("model file must be an object with a 'waves' array", 0);
  MultilogisticModel m;
  for (const auto& w : j.at("waves")) m.waves.push_back(wave_from_json(w));
  if (m.waves.empty()) throw ParseError("model file has no waves", 0);
  m.validate();
  if (meta && j.contains("meta")) {
    const auto& mj = j.at("meta");
    meta->source = mj.value("source", "");
    meta->created = mj.value("created", "");
    meta->tool_version = mj.value("tool_version", "");
  }
  return m;
}

MultilogisticModel read_model(const std::filesystem::path& path, ModelMeta* meta) {
  return model_from_json(read_json(path), meta);
}

void write_model(const std::filesystem::path& path, const MultilogisticModel& m, const ModelMeta& meta) {
  write_json(path, model_to_json(m, meta));
}

json report_to_json(const FitReport& report) {
  return {{"max_abs_error", report.max_abs_error},
          {"rmse", report.rmse},
          {"r_squared", report.r_squared ? json(*report.r_squared) : json(nullptr)},
          {"n", report.residuals.size()},
          {"residuals", report.residuals}};
}

FitReport report_from_json(const json& j) {
  FitReport r;
  r.max_abs_error = j.at("max_abs_error").get<double>();
  r.rmse = j.at("rmse").get<double>();
  if (!j.at("r_squared").is_null()) r.r_squared = j.at("r_squared").get<double>();
  r.residuals = j.at("residuals").get<std::vector<double>>();
  return r;
}

json trace_to_json(const DecompositionTrace& trace) {
  json iterations = json::array();
  for (const auto& it : trace.iterations) {
    json extrema = json::array(), chosen = json::array(), waves = json::array(), rejected = json::array();
    for (const auto& e : it.extrema) extrema.push_back(extremum_to_json(e));
    for (const auto& e : it.chosen) chosen.push_back(extremum_to_json(e));
    for (const auto& w : it.waves) waves.push_back(wave_to_json(w));
    for (const auto& r : it.rejected) rejected.push_back({{"extremum", extremum_to_json(r.extremum)}, {"y_sat", r.y_sat}});
    iterations.push_back({{"iteration", it.iteration},
                          {"residual", it.residual},
                          {"extrema", extrema},
                          {"chosen", chosen},
                          {"waves", waves},
                          {"rejected", rejected}});
  }
  return {{"t", trace.t},
          {"source", trace.source},
          {"saturation_floor", trace.saturation_floor},
          {"stop_reason", trace.stop_reason},
          {"iterations", iterations}};
}

DecompositionTrace trace_from_json(const json& j) {
  DecompositionTrace trace;
  trace.t = j.at("t").get<std::vector<double>>();
  trace.source = j.at("source").get<std::vector<double>>();
  trace.saturation_floor = j.at("saturation_floor").get<double>();
  trace.stop_reason = j.at("stop_reason").get<std::string>();
  for (const auto& ij : j.at("iterations")) {
    DecompositionIteration it;
    it.iteration = ij.at("iteration").get<std::size_t>();
    it.residual = ij.at("residual").get<std::vector<double>>();
    for (const auto& e : ij.at("extrema")) it.extrema.push_back(extremum_from_json(e));
    for (const auto& e : ij.at("chosen")) it.chosen.push_back(extremum_from_json(e));
    for (const auto& w : ij.at("waves")) it.waves.push_back(wave_from_json(w));
    for (const auto& r : ij.at("rejected"))
      it.rejected.push_back({extremum_from_json(r.at("extremum")), r.at("y_sat").get<double>()});
    trace.iterations.push_back(std::move(it));
  }
  return trace;
}

void write_scalogram_csv(std::ostream& out, const Scalogram& s) {
  out << "scale";
  for (double b : s.shifts) out << ',' << format_number(b);
  out << '\n';
  for (std::size_t i = 0; i < s.rows(); ++i) {
    out << format_number(s.scales[i]);
    for (std::size_t j = 0; j < s.cols(); ++j) out << ',' << format_number(s.at(i, j));
    out << '\n';
  }
}

Scalogram read_scalogram_csv(std::istream& in) {
  Scalogram s;
  std::string line;
  std::size_t line_no = 0;
  bool have_header = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    const auto fields = split_fields(line);
    if (!have_header) {
      have_header = true;
      for (std::size_t c = 1; c < fields.size(); ++c) s.shifts.push_back(parse_number(fields[c], line_no));
      if (s.shifts.empty()) throw ParseError("scalogram header has no shifts", line_no);
      continue;
    }
    if (fields.size() != s.shifts.size() + 1) throw ParseError("scalogram row has wrong width", line_no);
    s.scales.push_back(parse_number(fields[0], line_no));
    for (std::size_t c = 1; c < fields.size(); ++c) s.index.push_back(parse_number(fields[c], line_no));
  }
  return s;
}

json scalogram_to_json(const Scalogram& s) {
  json rows = json::array();
  for (std::size_t i = 0; i < s.rows(); ++i)
    rows.push_back(std::vector<double>(s.index.begin() + i * s.cols(), s.index.begin() + (i + 1) * s.cols()));
  return {{"scales", s.scales}, {"shifts", s.shifts}, {"index", rows}};
}

Scalogram scalogram_from_json(const json& j) {
  Scalogram s;
  s.scales = j.at("scales").get<std::vector<double>>();
  s.shifts = j.at("shifts").get<std::vector<double>>();
  for (const auto& row : j.at("index")) {
    auto values = row.get<std::vector<double>>();
    if (values.size() != s.shifts.size()) throw ParseError("scalogram row has wrong width", 0);
    s.index.insert(s.index.end(), values.begin(), values.end());
  }
  if (s.index.size() != s.rows() * s.cols()) throw ParseError("scalogram matrix does not match grids", 0);
  return s;
}

json read_json(const std::filesystem::path& path) {
  auto in = open_in(path);
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what(), 0);
  }
}

void write_json(const std::filesystem::path& path, const json& j) {
  auto out = open_out(path);
  out << j.dump(2) << '\n';
  if (!out) throw std::runtime_error("failed writing '" + path.string() + "'");
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buffer[32];
  std::strftime(buffer, sizeof buffer, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buffer;
}

}  // namespace mlwave::io
