#pragma once

// Nelder-Mead direct search with dimension-adaptive coefficients
// (reflection 1, expansion 1 + 2/n, contraction 0.75 - 1/(2n), shrink 1 - 1/n).

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace mlwave {

struct NelderMeadOptions {
  std::size_t max_evaluations = 20000;
  /// Converged when every vertex is within x_tol * scale[i] of the best one ...
  double x_tol = 1e-8;
  /// ... or the objective spread across the simplex is below f_tol.
  double f_tol = 0.0;
  /// Per-coordinate scale for the diameter test; empty means 1.
  std::vector<double> scale;
};

struct NelderMeadResult {
  std::vector<double> x;
  double value = 0.0;
  std::size_t evaluations = 0;
  bool converged = false;
};

using ObjectiveFn = std::function<double(std::span<const double>)>;

/// Minimize `f` from the simplex {x0, x0 + steps[i] e_i}.
NelderMeadResult nelder_mead(const ObjectiveFn& f, std::span<const double> x0,
                             std::span<const double> steps, const NelderMeadOptions& options);

}  // namespace mlwave
