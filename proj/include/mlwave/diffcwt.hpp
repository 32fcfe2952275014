#pragma once

// Central differences of a sampled series and the discrete logistic-wavelet
// scalogram of the second differences:
//
//   Index(a, b) = sum_n  d2[n] * psi2^{a,b}(t_n).
//
// No padding is applied; wavelet tails outside the data are truncated, so
// Index is biased within roughly 3a of either end of the series.

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mlwave/scurve.hpp"

namespace mlwave {

/// Interior differences of a series. Both orders drop the first and last sample.
struct DiffSeries {
  int order = 2;
  std::vector<double> t;
  std::vector<double> d;
  std::string provenance;

  std::size_t size() const { return t.size(); }
};

/// Index matrix over a (scale, shift) grid, stored row-major (rows = scales).
struct Scalogram {
  std::vector<double> scales;
  std::vector<double> shifts;
  std::vector<double> index;

  std::size_t rows() const { return scales.size(); }
  std::size_t cols() const { return shifts.size(); }
  double at(std::size_t row, std::size_t col) const { return index[row * cols() + col]; }
  double& at(std::size_t row, std::size_t col) { return index[row * cols() + col]; }
};

/// Geometric scale grid min_scale * 2^{k / voices_per_octave} up to max_scale.
/// When max_scale is unset it defaults to (series span) / 8.
struct ScaleGrid {
  double min_scale = 1.0;
  std::optional<double> max_scale;
  int voices_per_octave = 16;

  std::vector<double> build(double data_span) const;
};

struct GridPoint {
  std::size_t row = 0;
  std::size_t col = 0;
  double scale = 0.0;
  double shift = 0.0;
  double value = 0.0;
};

DiffSeries central_diff(const SampledSeries& series, int order, std::string provenance = {});

/// Sum with pairwise (cascade) reduction.
double pairwise_sum(std::span<const double> values);

double cwt_index(const DiffSeries& diff2, double a, double b);

/// Shift grid used by default: every sample time of the difference series.
std::vector<double> default_shifts(const DiffSeries& diff2);

/// Full Index matrix. Rows are independent; `threads` > 1 evaluates them in
/// parallel, 0 uses the hardware concurrency. The result does not depend on
/// the thread count.
Scalogram scalogram(const DiffSeries& diff2, std::span<const double> scales,
                    std::span<const double> shifts, unsigned threads = 1);

/// Global argmax (argmin when `minimum` is set) of the matrix.
GridPoint scalogram_extremum(const Scalogram& s, bool minimum);

/// Builds exact second-derivative samples y''(t) = y_sat / (sqrt(30) a^{3/2}) * psi2^{a,b}(t)
/// of `wave` at the shift-grid times, evaluates the Index grid and returns the
/// argmax (y_sat > 0) or argmin (y_sat < 0). Throws DomainError when the grids
/// do not bracket (wave.a, wave.b).
GridPoint lemma_oracle(const LogisticWave& wave, std::span<const double> scales,
                       std::span<const double> shifts);

/// Peak Index value of an exact logistic: y_sat / (sqrt(30) a^{3/2}).
double lemma_peak_index(const LogisticWave& wave);

}  // namespace mlwave
