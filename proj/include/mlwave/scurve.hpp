#pragma once

// Closed-form S-curves: Gompertz, logistic and sums of logistics.

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mlwave {

/// x(t) = x_sat * exp(-exp(-s (t - t0))). The initial value x0 is derived,
/// see gompertz_initial_value().
struct GompertzParams {
  double x_sat = 1.0;
  double s = 1.0;
  double t0 = 0.0;

  void validate() const;
};

/// y(t) = y_sat / (1 + exp(-(t - b) / a)). `a` is the dilation (1/steepness),
/// `b` the inflection time; y_sat may be negative for decreasing waves.
struct LogisticWave {
  double a = 1.0;
  double b = 0.0;
  double y_sat = 1.0;

  void validate() const;

  static LogisticWave from_steepness(double s, double t0, double y_sat) { return {1.0 / s, t0, y_sat}; }
  double steepness() const { return 1.0 / a; }
};

struct MultilogisticModel {
  std::vector<LogisticWave> waves;

  void validate() const;
  bool empty() const { return waves.empty(); }
  std::size_t size() const { return waves.size(); }
  /// Sum of the saturation levels, i.e. the upper asymptote of the model.
  double total_saturation() const;
};

/// Samples y[i] at strictly increasing times t[i]; at least three of them.
struct SampledSeries {
  std::vector<double> t;
  std::vector<double> y;

  SampledSeries() = default;
  SampledSeries(std::vector<double> times, std::vector<double> values);

  void validate() const;
  std::size_t size() const { return t.size(); }
  double span() const { return t.back() - t.front(); }
  /// True when consecutive spacings agree to a relative tolerance.
  bool uniform(double rel_tol = 1e-9) const;
  double step() const { return t[1] - t[0]; }
};

double gompertz_eval(const GompertzParams& p, double t);
double gompertz_inflection(const GompertzParams& p);
double gompertz_initial_value(const GompertzParams& p);

double logistic_eval(const LogisticWave& w, double t);
double multilogistic_eval(const MultilogisticModel& m, double t);
std::vector<double> multilogistic_eval(const MultilogisticModel& m, std::span<const double> t);

/// Uniform samples of `f` on [t_start, t_end], endpoints included.
SampledSeries sample_curve(const std::function<double(double)>& f, double t_start, double t_end,
                           double step);

/// Centered-difference derivative minus the right-hand side of the Gompertz ODE
/// x' = s x log(x_sat / x).
double gompertz_ode_residual(const GompertzParams& p, double t, double h);

/// Same check for the logistic ODE x' = (s / x_sat) x (x_sat - x), s = 1/a.
double logistic_ode_residual(const LogisticWave& w, double t, double h);

}  // namespace mlwave
