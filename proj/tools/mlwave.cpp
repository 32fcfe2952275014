// mlwave: decompose S-shaped series into sums of logistic waves.
//
//   mlwave generate gompertz --xsat 100000 --s 0.1 --t0 50 --from 0 --to 201 --out y.csv
//   mlwave decompose --in y.csv --out-model raw.json --out-trace trace.json
//   mlwave refine --in y.csv --model raw.json --objective minimax --out refined.json
//   mlwave eval --model refined.json --against y.csv --out fit.csv
//   mlwave metrics --in y.csv --model refined.json
//
// Exit codes: 0 success, 1 usage error, 2 data error, 3 optimizer did not
// converge (best-effort output is still written).

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <exception>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "mlwave/diffcwt.hpp"
#include "mlwave/error.hpp"
#include "mlwave/extract.hpp"
#include "mlwave/io.hpp"
#include "mlwave/refine.hpp"
#include "mlwave/scurve.hpp"

#ifndef MLWAVE_VERSION
#define MLWAVE_VERSION "0.0.0"
#endif

namespace {

using namespace mlwave;

enum ExitCode : int { kOk = 0, kUsage = 1, kData = 2, kNotConverged = 3 };

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Globals {
  std::uint64_t seed = 0;
  std::string threads = "1";
  bool quiet = false;

  unsigned thread_count() const {
    if (threads == "auto") return 0;
    try {
      const int n = std::stoi(threads);
      if (n < 1) throw UsageError("--threads must be a positive integer or 'auto'");
      return static_cast<unsigned>(n);
    } catch (const std::logic_error&) {
      throw UsageError("--threads must be a positive integer or 'auto'");
    }
  }
};

std::string num(double v) { return io::format_number(v, 6); }

io::ModelMeta make_meta(std::string source) {
  return {std::move(source), io::utc_timestamp(), MLWAVE_VERSION};
}

void print_waves(const MultilogisticModel& m) {
  std::cout << std::left << std::setw(6) << "wave" << std::setw(14) << "a" << std::setw(14) << "b"
            << "y_sat\n";
  for (std::size_t k = 0; k < m.waves.size(); ++k) {
    const auto& w = m.waves[k];
    std::cout << std::setw(6) << k + 1 << std::setw(14) << num(w.a) << std::setw(14) << num(w.b)
              << num(w.y_sat) << '\n';
  }
}

void print_report(const FitReport& r) {
  std::cout << "max_abs_error " << num(r.max_abs_error) << '\n'
            << "rmse " << num(r.rmse) << '\n'
            << "r_squared " << (r.r_squared ? num(*r.r_squared) : std::string("undefined")) << '\n';
}

// generate ------------------------------------------------------------------

struct GenerateArgs {
  std::string kind;
  std::optional<double> xsat, s, t0, a, b, ysat;
  std::string model;
  double from = 0.0, to = 0.0, step = 1.0;
  std::string out;
};

int run_generate(const GenerateArgs& g, const Globals& globals) {
  std::function<double(double)> f;
  auto need = [&](const std::optional<double>& v, const char* flag) {
    if (!v) throw UsageError(std::string("generate ") + g.kind + " requires " + flag);
    return *v;
  };
  if (g.kind == "gompertz") {
    const GompertzParams p{need(g.xsat, "--xsat"), need(g.s, "--s"), need(g.t0, "--t0")};
    p.validate();
    f = [p](double t) { return gompertz_eval(p, t); };
  } else if (g.kind == "logistic") {
    const LogisticWave w{need(g.a, "--a"), need(g.b, "--b"), need(g.ysat, "--ysat")};
    w.validate();
    f = [w](double t) { return logistic_eval(w, t); };
  } else {
    if (g.model.empty()) throw UsageError("generate multilogistic requires --model");
    const auto m = io::read_model(g.model);
    f = [m](double t) { return multilogistic_eval(m, t); };
  }
  const auto series = sample_curve(f, g.from, g.to, g.step);
  io::write_series(g.out, series);
  if (!globals.quiet) std::cout << series.size() << " samples written to " << g.out << '\n';
  return kOk;
}

// decompose -----------------------------------------------------------------

struct DecomposeArgs {
  std::string in, out_model, out_trace, scalogram_prefix, scalogram_format = "csv";
  DecompositionConfig cfg;
  std::optional<double> max_scale;
};

int run_decompose(DecomposeArgs d, const Globals& globals) {
  const auto series = io::read_series(d.in);
  d.cfg.threads = globals.thread_count();
  if (d.max_scale) d.cfg.scale_grid.max_scale = d.max_scale;
  const auto result = decompose(series, d.cfg);

  if (!d.out_trace.empty()) io::write_json(d.out_trace, io::trace_to_json(result.trace));
  if (!d.scalogram_prefix.empty()) {
    for (const auto& it : result.trace.iterations) {
      const auto path = d.scalogram_prefix + std::to_string(it.iteration) + "." + d.scalogram_format;
      if (d.scalogram_format == "json") {
        io::write_json(path, io::scalogram_to_json(it.scalogram));
      } else {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw std::runtime_error("cannot open '" + path + "' for writing");
        io::write_scalogram_csv(out, it.scalogram);
      }
    }
  }
  if (result.model.empty()) {
    std::cerr << "mlwave: no admissible waves (" << result.trace.stop_reason << ")\n";
    return kData;
  }
  io::write_model(d.out_model, result.model, make_meta(d.in));
  if (!globals.quiet) {
    print_waves(result.model);
    std::cout << "stop: " << result.trace.stop_reason << '\n';
  }
  return kOk;
}

// refine --------------------------------------------------------------------

struct RefineArgs {
  std::string in, model, out, report;
  std::string objective = "minimax";
  RefineConfig cfg;
};

void warn_span(const SampledSeries& series, const MultilogisticModel& m) {
  for (const auto& w : m.waves)
    if (w.b < series.t.front() || w.b > series.t.back())
      std::cerr << "mlwave: warning: wave center b=" << num(w.b) << " lies outside the series span ["
                << num(series.t.front()) << ", " << num(series.t.back()) << "]\n";
}

int run_refine(RefineArgs r, const Globals& globals) {
  r.cfg.objective = objective_from_string(r.objective);
  r.cfg.seed = globals.seed;
  const auto series = io::read_series(r.in);
  const auto m0 = io::read_model(r.model);
  warn_span(series, m0);

  const auto result = refine(series, m0, r.cfg);
  io::write_model(r.out, result.model, make_meta("refine(" + r.in + ", " + r.model + ")"));
  if (!r.report.empty()) {
    auto j = io::report_to_json(result.report);
    j["objective"] = std::string(to_string(r.cfg.objective));
    j["initial_objective"] = result.initial_objective;
    j["converged"] = result.converged;
    j["evaluations"] = result.evaluations;
    io::write_json(r.report, j);
  }
  if (!globals.quiet) {
    print_waves(result.model);
    print_report(result.report);
  }
  if (!result.converged) {
    std::cerr << "mlwave: optimizer budget exhausted before convergence; best model written\n";
    return kNotConverged;
  }
  return kOk;
}

// eval ----------------------------------------------------------------------

struct EvalArgs {
  std::string model, out, against;
  std::optional<double> from, to;
  double step = 1.0;
};

int run_eval(const EvalArgs& e, const Globals& globals) {
  const auto m = io::read_model(e.model);
  io::Table table;
  if (!e.against.empty()) {
    const auto series = io::read_series(e.against);
    const auto f = multilogistic_eval(m, series.t);
    std::vector<double> residual(series.size());
    double worst = 0.0;
    for (std::size_t n = 0; n < series.size(); ++n) {
      residual[n] = series.y[n] - f[n];
      worst = std::max(worst, std::abs(residual[n]));
    }
    table = {{"t", "f", "y", "residual"}, {series.t, f, series.y, residual}};
    if (!globals.quiet) std::cout << "max_abs_residual " << num(worst) << '\n';
  } else {
    if (!e.from || !e.to) throw UsageError("eval requires --from and --to, or --against");
    const auto series = sample_curve([&m](double t) { return multilogistic_eval(m, t); }, *e.from, *e.to, e.step);
    table = {{"t", "f"}, {series.t, series.y}};
  }
  std::ofstream out(e.out, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + e.out + "' for writing");
  io::write_table(out, table);
  if (!globals.quiet) std::cout << table.columns.front().size() << " samples written to " << e.out << '\n';
  return kOk;
}

// metrics -------------------------------------------------------------------

struct MetricsArgs {
  std::string in, model, out;
};

int run_metrics(const MetricsArgs& a, const Globals& globals) {
  const auto series = io::read_series(a.in);
  const auto m = io::read_model(a.model);
  const auto report = fit_metrics(series, m);
  if (!a.out.empty()) io::write_json(a.out, io::report_to_json(report));
  if (!globals.quiet) print_report(report);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Decompose S-shaped time series into sums of logistic waves"};
  app.require_subcommand(1);
  app.set_version_flag("--version", MLWAVE_VERSION);

  Globals globals;
  app.add_option("--seed", globals.seed, "Seed for optimizer restarts")->capture_default_str();
  app.add_option("--threads", globals.threads, "Worker threads for scalograms (integer or 'auto')")
      ->capture_default_str();
  app.add_flag("--quiet", globals.quiet, "Suppress standard output");

  GenerateArgs gen;
  auto* generate = app.add_subcommand("generate", "Sample a closed-form curve to a series CSV");
  generate->add_option("kind", gen.kind, "gompertz | logistic | multilogistic")
      ->required()
      ->check(CLI::IsMember({"gompertz", "logistic", "multilogistic"}));
  generate->add_option("--xsat", gen.xsat, "Gompertz saturation level");
  generate->add_option("--s", gen.s, "Gompertz growth rate");
  generate->add_option("--t0", gen.t0, "Gompertz inflection time");
  generate->add_option("--a", gen.a, "Logistic dilation");
  generate->add_option("--b", gen.b, "Logistic center");
  generate->add_option("--ysat", gen.ysat, "Logistic saturation level");
  generate->add_option("--model", gen.model, "Model JSON for multilogistic");
  generate->add_option("--from", gen.from, "First sample time")->required();
  generate->add_option("--to", gen.to, "Last sample time")->required();
  generate->add_option("--step", gen.step, "Sample spacing")->capture_default_str();
  generate->add_option("--out", gen.out, "Output series CSV")->required();

  DecomposeArgs dec;
  auto* decomp = app.add_subcommand("decompose", "Extract logistic waves from a series");
  decomp->add_option("--in", dec.in, "Input series CSV")->required();
  decomp->add_option("--out-model", dec.out_model, "Output model JSON")->required();
  decomp->add_option("--out-trace", dec.out_trace, "Output trace JSON");
  decomp->add_option("--scalogram-prefix", dec.scalogram_prefix,
                     "Write each pass's scalogram to <prefix><pass>.<format>");
  decomp->add_option("--scalogram-format", dec.scalogram_format)
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  decomp->add_option("--max-waves", dec.cfg.max_waves)->capture_default_str();
  decomp->add_option("--min-sat-frac", dec.cfg.min_saturation_fraction)->capture_default_str();
  decomp->add_option("--voices", dec.cfg.scale_grid.voices_per_octave, "Scales per octave")
      ->capture_default_str();
  decomp->add_option("--min-scale", dec.cfg.scale_grid.min_scale)->capture_default_str();
  decomp->add_option("--max-scale", dec.max_scale, "Largest scale (default: span / 8)");

  RefineArgs ref;
  auto* refine_cmd = app.add_subcommand("refine", "Optimize a model against a series");
  refine_cmd->add_option("--in", ref.in, "Input series CSV")->required();
  refine_cmd->add_option("--model", ref.model, "Starting model JSON")->required();
  refine_cmd->add_option("--objective", ref.objective)
      ->check(CLI::IsMember({"minimax", "least_squares"}))
      ->capture_default_str();
  refine_cmd->add_option("--out", ref.out, "Output model JSON")->required();
  refine_cmd->add_option("--report", ref.report, "Output fit report JSON");
  refine_cmd->add_option("--max-evals", ref.cfg.max_evaluations)->capture_default_str();
  refine_cmd->add_option("--restarts", ref.cfg.restarts)->capture_default_str();
  refine_cmd->add_option("--step-fraction", ref.cfg.initial_step_fraction)->capture_default_str();

  EvalArgs ev;
  auto* eval_cmd = app.add_subcommand("eval", "Evaluate a model on a grid or against a series");
  eval_cmd->add_option("--model", ev.model, "Model JSON")->required();
  eval_cmd->add_option("--from", ev.from);
  eval_cmd->add_option("--to", ev.to);
  eval_cmd->add_option("--step", ev.step)->capture_default_str();
  eval_cmd->add_option("--against", ev.against, "Series CSV; adds y and residual columns");
  eval_cmd->add_option("--out", ev.out, "Output CSV")->required();

  MetricsArgs met;
  auto* metrics_cmd = app.add_subcommand("metrics", "Fit metrics of a model against a series");
  metrics_cmd->add_option("--in", met.in, "Input series CSV")->required();
  metrics_cmd->add_option("--model", met.model, "Model JSON")->required();
  metrics_cmd->add_option("--out", met.out, "Output report JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (*generate) return run_generate(gen, globals);
    if (*decomp) return run_decompose(dec, globals);
    if (*refine_cmd) return run_refine(ref, globals);
    if (*eval_cmd) return run_eval(ev, globals);
    if (*metrics_cmd) return run_metrics(met, globals);
  } catch (const UsageError& e) {
    std::cerr << "mlwave: " << e.what() << '\n';
    return kUsage;
  } catch (const std::exception& e) {
    std::cerr << "mlwave: " << e.what() << '\n';
    return kData;
  }
  return kUsage;
}
