#include "mlwave/scurve.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "mlwave/error.hpp"

namespace mlwave {

namespace {

// 1 / (1 + exp(-u)) without overflow for either sign of u.
double sigmoid(double u) {
  if (u >= 0.0) return 1.0 / (1.0 + std::exp(-u));
  const double e = std::exp(u);
  return e / (1.0 + e);
}

}  // namespace

void GompertzParams::validate() const {
  if (!(x_sat > 0.0) || !std::isfinite(x_sat))
    throw DomainError("gompertz: x_sat must be positive and finite");
  if (!(s > 0.0) || !std::isfinite(s)) throw DomainError("gompertz: s must be positive and finite");
  if (!std::isfinite(t0)) throw DomainError("gompertz: t0 must be finite");
}

void LogisticWave::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("logistic: a must be positive and finite");
  if (!std::isfinite(b)) throw DomainError("logistic: b must be finite");
  if (y_sat == 0.0 || !std::isfinite(y_sat))
    throw DomainError("logistic: y_sat must be nonzero and finite");
}

void MultilogisticModel::validate() const {
  if (waves.empty()) throw DomainError("multilogistic model has no waves");
  for (const auto& w : waves) w.validate();
}

double MultilogisticModel::total_saturation() const {
  double sum = 0.0;
  for (const auto& w : waves) sum += w.y_sat;
  return sum;
}

SampledSeries::SampledSeries(std::vector<double> times, std::vector<double> values)
    : t(std::move(times)), y(std::move(values)) {
  validate();
}

void SampledSeries::validate() const {
  if (t.size() != y.size())
    throw DomainError("series: t and y lengths differ (" + std::to_string(t.size()) + " vs " +
                      std::to_string(y.size()) + ")");
  if (t.size() < 3) throw DomainError("series: at least 3 samples required");
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (!std::isfinite(t[i]) || !std::isfinite(y[i]))
      throw DomainError("series: non-finite value at sample " + std::to_string(i));
    if (i > 0 && !(t[i] > t[i - 1]))
      throw DomainError("series: t not strictly increasing at sample " + std::to_string(i));
  }
}

bool SampledSeries::uniform(double rel_tol) const {
  const double h = step();
  for (std::size_t i = 1; i + 1 < t.size(); ++i) {
    if (std::abs((t[i + 1] - t[i]) - h) > rel_tol * std::max(std::abs(h), 1e-300) + 1e-12 * std::abs(t[i]))
      return false;
  }
  return true;
}

double gompertz_eval(const GompertzParams& p, double t) {
  p.validate();
  return p.x_sat * std::exp(-std::exp(-p.s * (t - p.t0)));
}

double gompertz_inflection(const GompertzParams& p) {
  p.validate();
  return p.t0;
}

double gompertz_initial_value(const GompertzParams& p) {
  p.validate();
  return p.x_sat * std::exp(-std::exp(p.s * p.t0));
}

double logistic_eval(const LogisticWave& w, double t) {
  w.validate();
  return w.y_sat * sigmoid((t - w.b) / w.a);
}

double multilogistic_eval(const MultilogisticModel& m, double t) {
  m.validate();
  double sum = 0.0;
  for (const auto& w : m.waves) sum += w.y_sat * sigmoid((t - w.b) / w.a);
  return sum;
}

std::vector<double> multilogistic_eval(const MultilogisticModel& m, std::span<const double> t) {
  m.validate();
  std::vector<double> out(t.size(), 0.0);
  for (std::size_t i = 0; i < t.size(); ++i) {
    double sum = 0.0;
    for (const auto& w : m.waves) sum += w.y_sat * sigmoid((t[i] - w.b) / w.a);
    out[i] = sum;
  }
  return out;
}

SampledSeries sample_curve(const std::function<double(double)>& f, double t_start, double t_end,
                           double step) {
  if (!(step > 0.0) || !std::isfinite(step)) throw DomainError("sample_curve: step must be positive");
  if (!(t_end > t_start)) throw DomainError("sample_curve: empty range (t_end must exceed t_start)");
  const double span = (t_end - t_start) / step;
  const auto count = static_cast<std::size_t>(std::floor(span + 1e-9)) + 1;
  if (count < 3) throw DomainError("sample_curve: range holds fewer than 3 samples");

  std::vector<double> t(count), y(count);
  for (std::size_t i = 0; i < count; ++i) {
    t[i] = t_start + static_cast<double>(i) * step;
    y[i] = f(t[i]);
  }
  return SampledSeries(std::move(t), std::move(y));
}

double gompertz_ode_residual(const GompertzParams& p, double t, double h) {
  if (!(h > 0.0)) throw DomainError("ode residual: h must be positive");
  const double x = gompertz_eval(p, t);
  if (!(x > 0.0)) throw DomainError("ode residual: x(t) underflows to zero");
  const double derivative = (gompertz_eval(p, t + h) - gompertz_eval(p, t - h)) / (2.0 * h);
  return derivative - p.s * x * std::log(p.x_sat / x);
}

double logistic_ode_residual(const LogisticWave& w, double t, double h) {
  if (!(h > 0.0)) throw DomainError("ode residual: h must be positive");
  const double x = logistic_eval(w, t);
  const double derivative = (logistic_eval(w, t + h) - logistic_eval(w, t - h)) / (2.0 * h);
  return derivative - (1.0 / w.a) / w.y_sat * x * (w.y_sat - x);
}

}  // namespace mlwave
