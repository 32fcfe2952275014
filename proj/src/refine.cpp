#include "mlwave/refine.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "mlwave/error.hpp"
#include "mlwave/nelder_mead.hpp"

namespace mlwave {

namespace {

double sigmoid(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

// Parameters are laid out per wave as (log a, b - t_ref, y_sat); times are
// taken relative to the first sample so the search is shift equivariant.
struct Problem {
  std::vector<double> tau;
  std::vector<double> y;
  double t_ref = 0.0;
  Objective objective = Objective::minimax;

  double operator()(std::span<const double> p) const {
    const std::size_t waves = p.size() / 3;
    double worst = 0.0, sse = 0.0;
    for (std::size_t n = 0; n < tau.size(); ++n) {
      double f = 0.0;
      for (std::size_t k = 0; k < waves; ++k)
        f += p[3 * k + 2] * sigmoid((tau[n] - p[3 * k + 1]) / std::exp(p[3 * k]));
      const double r = y[n] - f;
      worst = std::max(worst, std::abs(r));
      sse += r * r;
    }
    return objective == Objective::minimax ? worst : std::sqrt(sse / static_cast<double>(tau.size()));
  }

  std::vector<double> pack(const MultilogisticModel& m) const {
    std::vector<double> p;
    for (const auto& w : m.waves) {
      p.push_back(std::log(w.a));
      p.push_back(w.b - t_ref);
      p.push_back(w.y_sat);
    }
    return p;
  }

  MultilogisticModel unpack(std::span<const double> p) const {
    MultilogisticModel m;
    for (std::size_t k = 0; k + 2 < p.size(); k += 3)
      m.waves.push_back({std::exp(p[k]), p[k + 1] + t_ref, p[k + 2]});
    return m;
  }
};

bool model_is_valid(const MultilogisticModel& m) {
  return std::all_of(m.waves.begin(), m.waves.end(), [](const LogisticWave& w) {
    return w.a > 0.0 && std::isfinite(w.a) && std::isfinite(w.b) && std::isfinite(w.y_sat) && w.y_sat != 0.0;
  });
}

}  // namespace

std::string_view to_string(Objective o) {
  return o == Objective::minimax ? "minimax" : "least_squares";
}

Objective objective_from_string(std::string_view name) {
  if (name == "minimax") return Objective::minimax;
  if (name == "least_squares") return Objective::least_squares;
  throw DomainError("unknown objective '" + std::string(name) + "'");
}

void RefineConfig::validate() const {
  if (max_evaluations == 0) throw DomainError("refine: max_evaluations must be positive");
  if (!(initial_step_fraction > 0.0 && initial_step_fraction < 0.5))
    throw DomainError("refine: initial_step_fraction must lie in (0, 0.5)");
}

FitReport fit_metrics(const SampledSeries& series, const MultilogisticModel& m) {
  series.validate();
  const auto fitted = multilogistic_eval(m, series.t);
  const auto count = static_cast<double>(series.size());

  FitReport report;
  report.residuals.resize(series.size());
  double mean = 0.0;
  for (double v : series.y) mean += v;
  mean /= count;

  double sse = 0.0, sst = 0.0;
  for (std::size_t n = 0; n < series.size(); ++n) {
    const double r = series.y[n] - fitted[n];
    report.residuals[n] = r;
    report.max_abs_error = std::max(report.max_abs_error, std::abs(r));
    sse += r * r;
    sst += (series.y[n] - mean) * (series.y[n] - mean);
  }
  report.rmse = std::sqrt(sse / count);
  if (sst > 0.0) report.r_squared = 1.0 - sse / sst;
  return report;
}

double objective_value(const FitReport& report, Objective objective) {
  return objective == Objective::minimax ? report.max_abs_error : report.rmse;
}

RefineResult refine(const SampledSeries& series, const MultilogisticModel& m0, const RefineConfig& cfg) {
  cfg.validate();
  series.validate();
  m0.validate();

  Problem problem;
  problem.t_ref = series.t.front();
  problem.y = series.y;
  problem.objective = cfg.objective;
  for (double t : series.t) problem.tau.push_back(t - problem.t_ref);

  const auto [lo, hi] = std::minmax_element(series.y.begin(), series.y.end());
  const double range = *hi - *lo;
  const double span = series.span();

  RefineResult result;
  result.model = m0;
  result.report = fit_metrics(series, m0);
  result.initial_objective = objective_value(result.report, cfg.objective);
  result.objective = result.initial_objective;
  result.converged = true;

  std::vector<double> best = problem.pack(m0);
  std::vector<double> base_steps, scale;
  for (const auto& w : m0.waves) {
    base_steps.insert(base_steps.end(), {cfg.initial_step_fraction, cfg.initial_step_fraction * span,
                                         cfg.initial_step_fraction * std::abs(w.y_sat)});
    scale.insert(scale.end(), {1.0, span, std::abs(w.y_sat)});
  }

  NelderMeadOptions options;
  options.x_tol = 1e-8;
  options.f_tol = 1e-6 * range;
  options.scale = scale;

  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> jitter(0.5, 1.5);
  double best_value = problem(best);
  std::size_t used = 0;

  for (std::size_t run = 0; run <= cfg.restarts; ++run) {
    const std::size_t remaining = cfg.max_evaluations - used;
    if (remaining < best.size() + 1) {
      result.converged = false;
      break;
    }
    std::vector<double> steps = base_steps;
    if (run > 0)
      for (double& s : steps) s *= (rng() & 1u ? 1.0 : -1.0) * jitter(rng);

    options.max_evaluations = remaining;
    const auto nm = nelder_mead(problem, best, steps, options);
    used += nm.evaluations;
    if (!nm.converged) result.converged = false;
    if (nm.value < best_value) {
      best = nm.x;
      best_value = nm.value;
    }
  }
  result.evaluations = used;

  // Accept only a strict improvement measured on the model itself.
  auto candidate = problem.unpack(best);
  if (model_is_valid(candidate)) {
    auto report = fit_metrics(series, candidate);
    const double value = objective_value(report, cfg.objective);
    if (value < result.initial_objective) {
      result.model = std::move(candidate);
      result.report = std::move(report);
      result.objective = value;
    }
  }
  return result;
}

double residual_tail_gap(const SampledSeries& series, const MultilogisticModel& m) {
  series.validate();
  m.validate();
  double peak = 0.0;
  for (double v : series.y) peak = std::max(peak, std::abs(v));
  const double last = series.y.back();
  if (!(std::abs(last) >= 0.99 * peak) || peak == 0.0)
    throw DomainError("residual_tail_gap: series has not plateaued (last value not within 1% of max)");
  return last - m.total_saturation();
}

}  // namespace mlwave
