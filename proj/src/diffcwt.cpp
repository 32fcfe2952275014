#include "mlwave/diffcwt.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "mlwave/error.hpp"
#include "mlwave/logwavelet.hpp"

namespace mlwave {

namespace {

void check_grid(std::span<const double> grid, const char* name, bool positive) {
  if (grid.empty()) throw DomainError(std::string("scalogram: empty ") + name + " grid");
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!std::isfinite(grid[i])) throw DomainError(std::string("scalogram: non-finite ") + name);
    if (positive && !(grid[i] > 0.0)) throw DomainError("scalogram: scales must be positive");
    if (i > 0 && !(grid[i] > grid[i - 1]))
      throw DomainError(std::string("scalogram: ") + name + " grid must be ascending");
  }
}

// Index restricted to the samples inside the effective support of the child.
double index_into(const DiffSeries& diff2, double a, double b, std::vector<double>& terms) {
  const double reach = kPsi2HalfSupport * a;
  const auto first = std::lower_bound(diff2.t.begin(), diff2.t.end(), b - reach) - diff2.t.begin();
  const auto last = std::upper_bound(diff2.t.begin(), diff2.t.end(), b + reach) - diff2.t.begin();
  terms.clear();
  const double norm = 1.0 / std::sqrt(a);
  for (auto n = first; n < last; ++n)
    terms.push_back(diff2.d[n] * (norm * mother_psi2((diff2.t[n] - b) / a)));
  return pairwise_sum(terms);
}

}  // namespace

std::vector<double> ScaleGrid::build(double data_span) const {
  if (!(min_scale > 0.0)) throw DomainError("scale grid: min_scale must be positive");
  if (voices_per_octave < 1) throw DomainError("scale grid: voices_per_octave must be >= 1");
  const double top = max_scale.value_or(data_span / 8.0);
  if (!(top >= min_scale)) throw DomainError("scale grid: max_scale below min_scale");

  const double octaves = std::log2(top / min_scale);
  const auto steps = static_cast<long>(std::floor(octaves * voices_per_octave + 1e-9));
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(steps) + 1);
  for (long k = 0; k <= steps; ++k)
    out.push_back(min_scale * std::exp2(static_cast<double>(k) / voices_per_octave));
  return out;
}

DiffSeries central_diff(const SampledSeries& series, int order, std::string provenance) {
  series.validate();
  if (order != 1 && order != 2) throw DomainError("central_diff: order must be 1 or 2");
  if (!series.uniform()) throw DomainError("central_diff: series spacing is not uniform");

  DiffSeries out;
  out.order = order;
  out.provenance = std::move(provenance);
  const std::size_t n = series.size();
  out.t.assign(series.t.begin() + 1, series.t.end() - 1);
  out.d.resize(n - 2);
  const auto& y = series.y;
  for (std::size_t i = 1; i + 1 < n; ++i) {
    out.d[i - 1] = order == 1 ? (y[i + 1] - y[i - 1]) / 2.0 : y[i + 1] - 2.0 * y[i] + y[i - 1];
  }
  return out;
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 8;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

double cwt_index(const DiffSeries& diff2, double a, double b) {
  if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("cwt_index: scale must be positive");
  if (diff2.t.size() != diff2.d.size()) throw DomainError("cwt_index: malformed difference series");
  std::vector<double> terms;
  return index_into(diff2, a, b, terms);
}

std::vector<double> default_shifts(const DiffSeries& diff2) { return diff2.t; }

Scalogram scalogram(const DiffSeries& diff2, std::span<const double> scales,
                    std::span<const double> shifts, unsigned threads) {
  check_grid(scales, "scale", true);
  check_grid(shifts, "shift", false);
  if (diff2.t.empty() || diff2.t.size() != diff2.d.size())
    throw DomainError("scalogram: empty or malformed difference series");

  Scalogram out;
  out.scales.assign(scales.begin(), scales.end());
  out.shifts.assign(shifts.begin(), shifts.end());
  out.index.assign(out.rows() * out.cols(), 0.0);

  auto fill_rows = [&](std::size_t first, std::size_t stride) {
    std::vector<double> terms;
    for (std::size_t i = first; i < out.rows(); i += stride)
      for (std::size_t j = 0; j < out.cols(); ++j)
        out.at(i, j) = index_into(diff2, out.scales[i], out.shifts[j], terms);
  };

  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, out.rows()));
  if (threads <= 1) {
    fill_rows(0, 1);
  } else {
    std::vector<std::jthread> workers;
    workers.reserve(threads);
    for (unsigned w = 0; w < threads; ++w) workers.emplace_back(fill_rows, w, threads);
  }
  return out;
}

GridPoint scalogram_extremum(const Scalogram& s, bool minimum) {
  if (s.index.empty()) throw DomainError("scalogram_extremum: empty scalogram");
  GridPoint best{0, 0, s.scales[0], s.shifts[0], s.at(0, 0)};
  for (std::size_t i = 0; i < s.rows(); ++i)
    for (std::size_t j = 0; j < s.cols(); ++j) {
      const double v = s.at(i, j);
      if (minimum ? v < best.value : v > best.value) best = {i, j, s.scales[i], s.shifts[j], v};
    }
  return best;
}

double lemma_peak_index(const LogisticWave& wave) {
  wave.validate();
  return wave.y_sat / (std::sqrt(30.0) * std::pow(wave.a, 1.5));
}

GridPoint lemma_oracle(const LogisticWave& wave, std::span<const double> scales,
                       std::span<const double> shifts) {
  wave.validate();
  check_grid(scales, "scale", true);
  check_grid(shifts, "shift", false);
  if (wave.a < scales.front() || wave.a > scales.back() || wave.b < shifts.front() ||
      wave.b > shifts.back())
    throw DomainError("lemma_oracle: grid does not bracket the wave parameters (a=" +
                      std::to_string(wave.a) + ", b=" + std::to_string(wave.b) + ")");

  DiffSeries exact;
  exact.order = 2;
  exact.provenance = "exact second derivative";
  exact.t.assign(shifts.begin(), shifts.end());
  const double amplitude = lemma_peak_index(wave);
  const ChildWaveletParams child{wave.a, wave.b};
  for (double t : exact.t) exact.d.push_back(amplitude * child_psi2(child, t));

  return scalogram_extremum(scalogram(exact, scales, shifts), wave.y_sat < 0.0);
}

}  // namespace mlwave
