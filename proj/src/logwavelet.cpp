#include "mlwave/logwavelet.hpp"

#include <cmath>

#include "mlwave/error.hpp"

namespace mlwave {

namespace {

const double kSqrt30 = std::sqrt(30.0);

void check_quadrature(double step, double half_width) {
  if (!(step > 0.0)) throw DomainError("quadrature: step must be positive");
  if (!(half_width > 0.0)) throw DomainError("quadrature: half_width must be positive");
}

void check_tail(double bound, double tail_tol) {
  if (bound > tail_tol)
    throw DomainError("quadrature: half_width too small, tail bound " + std::to_string(bound) +
                      " exceeds tolerance");
}

}  // namespace

void ChildWaveletParams::validate() const {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("child wavelet: a must be positive");
  if (!std::isfinite(b)) throw DomainError("child wavelet: b must be finite");
}

double mother_psi2(double t) {
  // Evaluate for |t| and restore the sign: psi2 is odd, and e^{-2t} would
  // overflow for large negative t.
  const double u = std::abs(t);
  const double e = std::exp(-u);
  const double d = 1.0 + e;
  const double v = kSqrt30 * (e * e - e) / (d * d * d);
  return t < 0.0 ? -v : v;
}

double child_psi2(const ChildWaveletParams& p, double t) {
  p.validate();
  return (1.0 / std::sqrt(p.a)) * mother_psi2((t - p.b) / p.a);
}

double trapezoid_symmetric(const std::function<double(double)>& f, double center, double half_width,
                           double step) {
  check_quadrature(step, half_width);
  const auto n = static_cast<long>(std::llround(half_width / step));
  double sum = f(center);
  // Pair +k with -k so an odd integrand cancels term by term.
  for (long k = 1; k < n; ++k) {
    const double offset = static_cast<double>(k) * step;
    sum += f(center + offset) + f(center - offset);
  }
  if (n > 0) {
    const double offset = static_cast<double>(n) * step;
    sum += 0.5 * (f(center + offset) + f(center - offset));
  }
  return sum * step;
}

double psi2_norm_squared(double step, double half_width, double tail_tol) {
  check_quadrature(step, half_width);
  check_tail(30.0 * std::exp(-2.0 * half_width), tail_tol);
  return trapezoid_symmetric([](double t) { const double v = mother_psi2(t); return v * v; }, 0.0,
                             half_width, step);
}

double psi2_l2_norm(double step, double half_width, double tail_tol) {
  return std::sqrt(psi2_norm_squared(step, half_width, tail_tol));
}

double psi2_zero_mean(double step, double half_width, double tail_tol) {
  check_quadrature(step, half_width);
  check_tail(2.0 * kSqrt30 * std::exp(-half_width), tail_tol);
  return trapezoid_symmetric(mother_psi2, 0.0, half_width, step);
}

double child_psi2_norm_squared(const ChildWaveletParams& p, double step, double half_width,
                               double tail_tol) {
  p.validate();
  check_quadrature(step, half_width);
  check_tail(30.0 * std::exp(-2.0 * half_width / p.a), tail_tol);
  return trapezoid_symmetric([&p](double t) { const double v = child_psi2(p, t); return v * v; }, p.b,
                             half_width, step);
}

double child_psi2_zero_mean(const ChildWaveletParams& p, double step, double half_width,
                            double tail_tol) {
  p.validate();
  check_quadrature(step, half_width);
  check_tail(2.0 * kSqrt30 * std::sqrt(p.a) * std::exp(-half_width / p.a), tail_tol);
  return trapezoid_symmetric([&p](double t) { return child_psi2(p, t); }, p.b, half_width, step);
}

}  // namespace mlwave
