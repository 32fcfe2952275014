#include "mlwave/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

#include "mlwave/error.hpp"

namespace mlwave {

NelderMeadResult nelder_mead(const ObjectiveFn& f, std::span<const double> x0,
                             std::span<const double> steps, const NelderMeadOptions& options) {
  const std::size_t n = x0.size();
  if (n == 0) throw DomainError("nelder_mead: empty parameter vector");
  if (steps.size() != n) throw DomainError("nelder_mead: step vector size mismatch");
  if (!options.scale.empty() && options.scale.size() != n)
    throw DomainError("nelder_mead: scale vector size mismatch");
  if (options.max_evaluations < n + 1)
    throw DomainError("nelder_mead: evaluation budget smaller than the initial simplex");

  const double dim = static_cast<double>(n);
  const double alpha = 1.0;
  const double gamma = 1.0 + 2.0 / dim;
  const double rho = 0.75 - 1.0 / (2.0 * dim);
  const double sigma = n > 1 ? 1.0 - 1.0 / dim : 0.5;

  NelderMeadResult result;
  std::size_t evals = 0;
  auto evaluate = [&](const std::vector<double>& x) {
    ++evals;
    const double v = f(x);
    return std::isnan(v) ? std::numeric_limits<double>::infinity() : v;
  };

  std::vector<std::vector<double>> simplex(n + 1, std::vector<double>(x0.begin(), x0.end()));
  for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += steps[i];
  std::vector<double> values(n + 1);
  for (std::size_t v = 0; v <= n; ++v) values[v] = evaluate(simplex[v]);

  std::vector<std::size_t> order(n + 1);
  std::vector<double> centroid(n), trial(n), trial2(n);
  auto point = [&](double t, std::vector<double>& out) {
    const auto& worst = simplex[order[n]];
    for (std::size_t i = 0; i < n; ++i) out[i] = centroid[i] + t * (worst[i] - centroid[i]);
  };

  while (true) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t l, std::size_t r) { return values[l] < values[r]; });
    const auto& best = simplex[order[0]];

    double diameter = 0.0;
    for (std::size_t v = 1; v <= n; ++v)
      for (std::size_t i = 0; i < n; ++i) {
        const double s = options.scale.empty() ? 1.0 : options.scale[i];
        diameter = std::max(diameter, std::abs(simplex[order[v]][i] - best[i]) / s);
      }
    const double spread = values[order[n]] - values[order[0]];
    if (diameter < options.x_tol || spread <= options.f_tol) {
      result.converged = true;
      break;
    }
    if (evals + 2 > options.max_evaluations) break;

    std::fill(centroid.begin(), centroid.end(), 0.0);
    for (std::size_t v = 0; v < n; ++v)
      for (std::size_t i = 0; i < n; ++i) centroid[i] += simplex[order[v]][i];
    for (double& c : centroid) c /= dim;

    const std::size_t worst = order[n];
    const double f_best = values[order[0]];
    const double f_second_worst = values[order[n - 1]];

    point(-alpha, trial);
    const double f_reflect = evaluate(trial);
    if (f_reflect < f_best) {
      point(-alpha * gamma, trial2);
      const double f_expand = evaluate(trial2);
      if (f_expand < f_reflect) {
        simplex[worst] = trial2;
        values[worst] = f_expand;
      } else {
        simplex[worst] = trial;
        values[worst] = f_reflect;
      }
      continue;
    }
    if (f_reflect < f_second_worst) {
      simplex[worst] = trial;
      values[worst] = f_reflect;
      continue;
    }
    // Outside contraction when the reflection beat the worst vertex, inside otherwise.
    const bool outside = f_reflect < values[worst];
    point(outside ? -alpha * rho : rho, trial2);
    const double f_contract = evaluate(trial2);
    if (outside ? f_contract <= f_reflect : f_contract < values[worst]) {
      simplex[worst] = trial2;
      values[worst] = f_contract;
      continue;
    }
    if (evals + n > options.max_evaluations) break;
    const auto anchor = simplex[order[0]];
    for (std::size_t v = 1; v <= n; ++v) {
      auto& x = simplex[order[v]];
      for (std::size_t i = 0; i < n; ++i) x[i] = anchor[i] + sigma * (x[i] - anchor[i]);
      values[order[v]] = evaluate(x);
    }
  }

  const auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
  result.x = simplex[best];
  result.value = values[best];
  result.evaluations = evals;
  return result;
}

}  // namespace mlwave
