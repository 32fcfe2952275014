#pragma once

// Normalized second-order logistic wavelet
//
//   psi2(t) = sqrt(30) * (e^{-2t} - e^{-t}) / (1 + e^{-t})^3,
//
// which is sqrt(30) times the second derivative of 1 / (1 + e^{-t}), and its
// children psi2^{a,b}(t) = psi2((t - b) / a) / sqrt(a).

#include <functional>

namespace mlwave {

/// Beyond |t| = 40 the mother wavelet is below 1e-16.
inline constexpr double kPsi2HalfSupport = 40.0;

struct ChildWaveletParams {
  double a = 1.0;
  double b = 0.0;

  void validate() const;
};

double mother_psi2(double t);
double child_psi2(const ChildWaveletParams& p, double t);

/// Composite trapezoid on the nodes center + k*step, k = -n..n, n = round(half_width/step).
/// The node set is exactly symmetric about `center`.
double trapezoid_symmetric(const std::function<double(double)>& f, double center, double half_width,
                           double step);

/// Numerical integral of psi2^2 over [-half_width, half_width]; equals 1 for a
/// normalized wavelet. Throws DomainError if the analytic tail bound
/// 30 e^{-2 half_width} exceeds `tail_tol`.
double psi2_norm_squared(double step, double half_width = kPsi2HalfSupport, double tail_tol = 1e-10);
double psi2_l2_norm(double step, double half_width = kPsi2HalfSupport, double tail_tol = 1e-10);

/// Numerical integral of psi2 over [-half_width, half_width]; zero by antisymmetry.
double psi2_zero_mean(double step, double half_width = kPsi2HalfSupport, double tail_tol = 1e-10);

/// Child variants integrate over [b - half_width, b + half_width]; the tail
/// bounds are scaled by a.
double child_psi2_norm_squared(const ChildWaveletParams& p, double step, double half_width,
                               double tail_tol = 1e-10);
double child_psi2_zero_mean(const ChildWaveletParams& p, double step, double half_width,
                            double tail_tol = 1e-10);

}  // namespace mlwave
