#pragma once

// Fit metrics and derivative-free refinement of multilogistic models.

#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "mlwave/scurve.hpp"

namespace mlwave {

struct FitReport {
  double max_abs_error = 0.0;
  double rmse = 0.0;
  /// 1 - SSE / SST. Unset for a constant series (SST = 0).
  std::optional<double> r_squared;
  std::vector<double> residuals;
};

enum class Objective { minimax, least_squares };

std::string_view to_string(Objective o);
Objective objective_from_string(std::string_view name);

struct RefineConfig {
  Objective objective = Objective::minimax;
  std::size_t max_evaluations = 20000;
  /// Initial simplex step per parameter: relative change of a and y_sat,
  /// fraction of the series span for b.
  double initial_step_fraction = 0.05;
  std::size_t restarts = 3;
  std::uint64_t seed = 0;

  void validate() const;
};

struct RefineResult {
  MultilogisticModel model;
  FitReport report;
  double initial_objective = 0.0;
  double objective = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

/// Residuals r_n = y_n - f(t_n) and their summaries.
FitReport fit_metrics(const SampledSeries& series, const MultilogisticModel& m);

/// max |r_n| for minimax, RMSE for least squares.
double objective_value(const FitReport& report, Objective objective);

/// Nelder-Mead search over (log a_i, b_i, y_sat_i) with seeded restarts around
/// the incumbent. The returned model is never worse than m0 under the chosen
/// objective; if nothing improves, m0 is returned unchanged.
RefineResult refine(const SampledSeries& series, const MultilogisticModel& m0,
                    const RefineConfig& cfg = {});

/// Final series value minus the model's total saturation. Throws DomainError
/// unless the last sample is within 1% of max |y| (the series has plateaued).
double residual_tail_gap(const SampledSeries& series, const MultilogisticModel& m);

}  // namespace mlwave
