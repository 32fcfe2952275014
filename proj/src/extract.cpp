#include "mlwave/extract.hpp"

#include <algorithm>
#include <cmath>

#include "mlwave/error.hpp"

namespace mlwave {

namespace {

bool is_strict_extremum(const Scalogram& s, std::size_t i, std::size_t j, bool maximum) {
  const double v = s.at(i, j);
  for (int di = -1; di <= 1; ++di)
    for (int dj = -1; dj <= 1; ++dj) {
      if (di == 0 && dj == 0) continue;
      const double w = s.at(i + di, j + dj);
      if (maximum ? !(v > w) : !(v < w)) return false;
    }
  return true;
}

bool excluded(const ScalogramExtremum& kept, const ScalogramExtremum& e, const ExclusionRadius& r) {
  return std::abs(std::log2(e.a / kept.a)) < r.scale_octaves &&
         std::abs(e.b - kept.b) < r.shift_scale_multiple * kept.a;
}

}  // namespace

void DecompositionConfig::validate() const {
  if (max_waves < 1) throw DomainError("decompose: max_waves must be >= 1");
  if (!(min_saturation_fraction > 0.0 && min_saturation_fraction < 1.0))
    throw DomainError("decompose: min_saturation_fraction must lie in (0, 1)");
  if (saturation_floor && !(*saturation_floor >= 0.0))
    throw DomainError("decompose: saturation_floor must be nonnegative");
  if (first_pass_waves < 1 || later_pass_waves < 1)
    throw DomainError("decompose: waves per pass must be >= 1");
  if (exclusion.scale_octaves < 0.0 || exclusion.shift_scale_multiple < 0.0)
    throw DomainError("decompose: exclusion radius must be nonnegative");
}

std::vector<ScalogramExtremum> find_extrema(const Scalogram& s, const DecompositionConfig& cfg) {
  std::vector<ScalogramExtremum> candidates;
  if (s.rows() < 3 || s.cols() < 3) return candidates;

  for (std::size_t i = 1; i + 1 < s.rows(); ++i)
    for (std::size_t j = 1; j + 1 < s.cols(); ++j) {
      const double v = s.at(i, j);
      if (v > 0.0 && is_strict_extremum(s, i, j, true))
        candidates.push_back({s.scales[i], s.shifts[j], v, ExtremumKind::maximum, i, j});
      else if (v < 0.0 && is_strict_extremum(s, i, j, false))
        candidates.push_back({s.scales[i], s.shifts[j], v, ExtremumKind::minimum, i, j});
    }

  std::stable_sort(candidates.begin(), candidates.end(), [](const auto& l, const auto& r) {
    return std::abs(l.index_value) > std::abs(r.index_value);
  });

  std::vector<ScalogramExtremum> kept;
  for (const auto& c : candidates) {
    const bool blocked = std::any_of(kept.begin(), kept.end(),
                                     [&](const auto& k) { return excluded(k, c, cfg.exclusion); });
    if (!blocked) kept.push_back(c);
  }
  return kept;
}

double estimate_saturation(const ScalogramExtremum& e) {
  if (!(e.a > 0.0)) throw DomainError("estimate_saturation: scale must be positive");
  return std::sqrt(30.0) * std::pow(e.a, 1.5) * e.index_value;
}

std::optional<LogisticWave> extremum_to_wave(const ScalogramExtremum& e, double floor) {
  const double y_sat = estimate_saturation(e);
  if (y_sat == 0.0 || std::abs(y_sat) < floor) return std::nullopt;
  return LogisticWave{e.a, e.b, y_sat};
}

Decomposition decompose(const SampledSeries& series, const DecompositionConfig& cfg) {
  cfg.validate();
  series.validate();
  if (series.size() < 8) throw DomainError("decompose: at least 8 samples required");

  Decomposition out;
  auto& trace = out.trace;
  trace.t = series.t;
  trace.source = series.y;

  const auto [lo, hi] = std::minmax_element(series.y.begin(), series.y.end());
  const double range = *hi - *lo;
  if (range == 0.0) {
    trace.stop_reason = "no admissible waves: constant series";
    return out;
  }
  trace.saturation_floor = cfg.saturation_floor.value_or(cfg.min_saturation_fraction * range);

  const auto scales = cfg.scale_grid.build(series.span());

  while (out.model.size() < cfg.max_waves) {
    DecompositionIteration it;
    it.iteration = trace.iterations.size();

    // Residual from the source each pass keeps the trace identity exact.
    it.residual = series.y;
    if (!out.model.empty()) {
      const auto fitted = multilogistic_eval(out.model, series.t);
      for (std::size_t n = 0; n < it.residual.size(); ++n) it.residual[n] -= fitted[n];
    }

    const SampledSeries residual{series.t, it.residual};
    const auto diff2 = central_diff(residual, 2, "residual " + std::to_string(it.iteration));
    const auto shifts = cfg.shift_grid.empty() ? default_shifts(diff2) : cfg.shift_grid;
    it.scalogram = scalogram(diff2, scales, shifts, cfg.threads);
    it.extrema = find_extrema(it.scalogram, cfg);

    const std::size_t quota =
        std::min(it.iteration == 0 ? cfg.first_pass_waves : cfg.later_pass_waves,
                 cfg.max_waves - out.model.size());
    for (const auto& e : it.extrema) {
      if (it.waves.size() == quota) break;
      if (auto wave = extremum_to_wave(e, trace.saturation_floor)) {
        it.chosen.push_back(e);
        it.waves.push_back(*wave);
      } else {
        it.rejected.push_back({e, estimate_saturation(e)});
      }
    }

    const bool found = !it.waves.empty();
    out.model.waves.insert(out.model.waves.end(), it.waves.begin(), it.waves.end());
    trace.iterations.push_back(std::move(it));
    if (!found) {
      trace.stop_reason = out.model.empty() ? "no admissible waves" : "no admissible extremum in residual";
      return out;
    }
  }
  trace.stop_reason = "max_waves reached";
  return out;
}

}  // namespace mlwave
