#include <filesystem>
#include <cmath>
#include <random>
#include <sstream>

#include <doctest.h>

#include "mlwave/error.hpp"
#include "mlwave/io.hpp"

using namespace mlwave;

TEST_CASE("series CSV parsing") {
  std::istringstream crlf("\xEF\xBB\xBFt,y\r\n0,1.5\r\n1,2\r\n2,-3e2\r\n\r\n");
  const auto s = io::read_series(crlf);
  CHECK(s.size() == 3);
  CHECK(s.y[2] == -300.0);

  std::istringstream bad("t,y\n0,1\n1,abc\n2,3\n");
  try {
    io::read_series(bad);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 3);
  }

  std::istringstream no_header("0,1\n1,2\n2,3\n");
  CHECK_THROWS_AS(io::read_series(no_header), ParseError);
  std::istringstream three_cols("t,y,z\n0,1,2\n");
  CHECK_THROWS_AS(io::read_series(three_cols), ParseError);
  std::istringstream ragged("t,y\n0,1\n1\n");
  CHECK_THROWS_AS(io::read_series(ragged), ParseError);
  std::istringstream decreasing("t,y\n0,1\n2,2\n1,3\n");
  try {
    io::read_series(decreasing);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
  }
}

TEST_CASE("series CSV round trip") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<double> t, y;
    for (int n = 0; n < 50; ++n) {
      t.push_back(n - 10);
      y.push_back(u(rng) * std::pow(10.0, trial % 7 - 3));
    }
    const SampledSeries s(t, y);
    std::stringstream buffer;
    io::write_series(buffer, s);
    const auto back = io::read_series(buffer);
    CHECK(back.t == s.t);
    CHECK(back.y == s.y);
  }
}

TEST_CASE("number formatting is locale independent") {
  CHECK(io::format_number(0.1) == "0.10000000000000001");
  CHECK(io::format_number(50.0) == "50");
  CHECK(io::format_number(87959.123456789, 6) == "87959.1");
  CHECK(io::parse_number("+2.5") == 2.5);
  CHECK_THROWS_AS(io::parse_number("2,5"), ParseError);
  CHECK_THROWS_AS(io::parse_number("inf"), ParseError);
}

TEST_CASE("model JSON") {
  const MultilogisticModel m{{{6.17, 50.0, 88057.0}, {0.1 + 0.2, -1.0 / 3.0, -10919.123456789012}}};
  const io::ModelMeta meta{"unit test", "2026-01-01T00:00:00Z", "0.1.0"};
  const auto text = io::model_to_json(m, meta).dump();
  io::ModelMeta back_meta;
  const auto back = io::model_from_json(nlohmann::json::parse(text), &back_meta);
  REQUIRE(back.size() == 2);
  for (std::size_t k = 0; k < 2; ++k) {
    CHECK(back.waves[k].a == m.waves[k].a);
    CHECK(back.waves[k].b == m.waves[k].b);
    CHECK(back.waves[k].y_sat == m.waves[k].y_sat);
  }
  CHECK(back_meta.source == "unit test");

  CHECK_THROWS_AS(io::model_from_json(nlohmann::json::parse(R"({"waves": []})")), ParseError);
  CHECK_THROWS_AS(io::model_from_json(nlohmann::json::parse(R"({"w": 1})")), ParseError);
  CHECK_THROWS_AS(io::model_from_json(nlohmann::json::parse(R"({"waves": [{"a": -1, "b": 0, "y_sat": 1}]})")),
                  DomainError);
}

TEST_CASE("report, trace and scalogram round trip") {
  const GompertzParams p{100000.0, 0.1, 50.0};
  const auto series = sample_curve([p](double t) { return gompertz_eval(p, t); }, 0.0, 201.0, 1.0);
  const auto d = decompose(series);

  const auto report = fit_metrics(series, d.model);
  const auto r = io::report_from_json(nlohmann::json::parse(io::report_to_json(report).dump()));
  CHECK(r.max_abs_error == report.max_abs_error);
  CHECK(r.rmse == report.rmse);
  CHECK(r.r_squared == report.r_squared);
  CHECK(r.residuals == report.residuals);
  FitReport undefined;
  undefined.residuals = {0.0};
  CHECK_FALSE(io::report_from_json(io::report_to_json(undefined)).r_squared);

  const auto trace = io::trace_from_json(nlohmann::json::parse(io::trace_to_json(d.trace).dump()));
  REQUIRE(trace.iterations.size() == d.trace.iterations.size());
  CHECK(trace.stop_reason == d.trace.stop_reason);
  CHECK(trace.source == d.trace.source);
  for (std::size_t k = 0; k < trace.iterations.size(); ++k) {
    const auto& a = trace.iterations[k];
    const auto& b = d.trace.iterations[k];
    CHECK(a.residual == b.residual);
    REQUIRE(a.waves.size() == b.waves.size());
    CHECK(a.waves[0].y_sat == b.waves[0].y_sat);
    REQUIRE(a.extrema.size() == b.extrema.size());
    CHECK(a.extrema[0].kind == b.extrema[0].kind);
    CHECK(a.extrema[0].index_value == b.extrema[0].index_value);
  }

  const auto& s = d.trace.iterations[0].scalogram;
  std::stringstream csv;
  io::write_scalogram_csv(csv, s);
  const auto from_csv = io::read_scalogram_csv(csv);
  CHECK(from_csv.scales == s.scales);
  CHECK(from_csv.shifts == s.shifts);
  CHECK(from_csv.index == s.index);
  const auto from_json = io::scalogram_from_json(nlohmann::json::parse(io::scalogram_to_json(s).dump()));
  CHECK(from_json.index == s.index);
}

TEST_CASE("file helpers report unreadable paths") {
  CHECK_THROWS(io::read_series(std::filesystem::path("/nonexistent/series.csv")));
  CHECK_THROWS(io::write_json("/nonexistent/dir/out.json", nlohmann::json::object()));
}
