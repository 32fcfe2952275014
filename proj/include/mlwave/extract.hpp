#pragma once

// Scalogram extremum detection, saturation estimation and the iterative
// residual decomposition of a series into logistic waves.

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "mlwave/diffcwt.hpp"
#include "mlwave/scurve.hpp"

namespace mlwave {

enum class ExtremumKind { maximum, minimum };

struct ScalogramExtremum {
  double a = 0.0;
  double b = 0.0;
  double index_value = 0.0;
  ExtremumKind kind = ExtremumKind::maximum;
  std::size_t row = 0;
  std::size_t col = 0;
};

struct ExclusionRadius {
  double scale_octaves = 0.5;
  /// Shift radius as a multiple of the kept extremum's scale.
  double shift_scale_multiple = 2.0;
};

struct DecompositionConfig {
  std::size_t max_waves = 3;
  /// Waves with |y_sat| below this fraction of (max y - min y) are rejected.
  double min_saturation_fraction = 0.02;
  /// Absolute floor overriding min_saturation_fraction when set.
  std::optional<double> saturation_floor;
  ExclusionRadius exclusion;
  ScaleGrid scale_grid;
  /// Extra shift grid; empty means every sample time of the difference series.
  std::vector<double> shift_grid;
  std::size_t first_pass_waves = 1;
  std::size_t later_pass_waves = 2;
  unsigned threads = 1;

  void validate() const;
};

struct RejectedCandidate {
  ScalogramExtremum extremum;
  double y_sat = 0.0;
};

struct DecompositionIteration {
  std::size_t iteration = 0;
  /// Series the scalogram was computed from: source minus earlier waves.
  std::vector<double> residual;
  Scalogram scalogram;
  std::vector<ScalogramExtremum> extrema;
  std::vector<ScalogramExtremum> chosen;
  std::vector<LogisticWave> waves;
  std::vector<RejectedCandidate> rejected;
};

struct DecompositionTrace {
  std::vector<double> t;
  std::vector<double> source;
  double saturation_floor = 0.0;
  std::vector<DecompositionIteration> iterations;
  std::string stop_reason;
};

struct Decomposition {
  MultilogisticModel model;
  DecompositionTrace trace;
};

/// Strict 8-neighbourhood extrema of the grid interior, strongest |Index|
/// first, greedily thinned so no two survivors share an exclusion box.
std::vector<ScalogramExtremum> find_extrema(const Scalogram& s, const DecompositionConfig& cfg);

/// sqrt(30) a^{3/2} Index; the sign of Index carries through.
double estimate_saturation(const ScalogramExtremum& e);

/// Wave for an extremum, or nullopt when |y_sat| falls below `floor`.
std::optional<LogisticWave> extremum_to_wave(const ScalogramExtremum& e, double floor = 0.0);

/// Extract waves pass by pass: Index scalogram of the residual's second
/// differences, strongest admissible extrema to waves, subtract, repeat.
/// A constant series yields an empty model and a stop_reason.
Decomposition decompose(const SampledSeries& series, const DecompositionConfig& cfg = {});

}  // namespace mlwave
