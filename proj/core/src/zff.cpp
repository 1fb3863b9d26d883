/*
Copyright 2026 The glottalkit Authors. All rights reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
*/

#include "glottalkit/zff.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "glottalkit/error.hpp"

namespace glottalkit {

int EstimateMeanPitchPeriod(const Waveform& w, double f0_min, double f0_max) {
  Require(f0_min > 0.0 && f0_min < f0_max, ErrorCode::kInvalidArgument,
          fmt::format("pitch search needs 0 < f0_min < f0_max (got {}, {})", f0_min, f0_max));
  const double fs = w.fs();
  const auto min_len = static_cast<std::size_t>(std::ceil(2.0 * fs / f0_min));
  Require(w.size() >= min_len, ErrorCode::kSignalTooShort,
          fmt::format("pitch estimation needs at least {} samples (got {})", min_len, w.size()));

  const std::vector<double> x = PreEmphasize(w.samples());
  const std::size_t n = x.size();
  const auto lag_lo = std::max<std::size_t>(2, static_cast<std::size_t>(std::lround(fs / f0_max)));
  const auto lag_hi = std::min<std::size_t>(n - 1, static_cast<std::size_t>(std::lround(fs / f0_min)));

  double r0 = 0.0;
  for (double v : x) r0 += v * v;
  Require(r0 > 0.0, ErrorCode::kUnvoiced, "unvoiced/aperiodic: signal has no energy");

  double best = -2.0;
  std::size_t best_lag = lag_lo;
  for (std::size_t k = lag_lo; k <= lag_hi; ++k) {
    double acc = 0.0;
    for (std::size_t i = 0; i + k < n; ++i) acc += x[i] * x[i + k];
    const double r = acc / r0;
    if (r > best) {
      best = r;
      best_lag = k;
    }
  }
  Require(best >= kVoicingFloor, ErrorCode::kUnvoiced,
          fmt::format("unvoiced/aperiodic: autocorrelation peak {:.3f} below floor {}", best,
                      kVoicingFloor));
  return static_cast<int>(best_lag);
}

std::vector<double> ZeroFrequencyResonators(std::span<const double> x) {
  std::vector<double> z(x.begin(), x.end());
  for (int pass = 0; pass < 4; ++pass) {
    double acc = 0.0;
    for (double& v : z) {
      acc += v;
      v = acc;
    }
  }
  return z;
}

std::vector<double> SubtractLocalMean(std::span<const double> z, std::size_t half_window) {
  const std::size_t n = z.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t lo = i >= half_window ? i - half_window : 0;
    const std::size_t hi = std::min(n - 1, i + half_window);
    double acc = 0.0;
    for (std::size_t j = lo; j <= hi; ++j) acc += z[j];
    out[i] = z[i] - acc / static_cast<double>(hi - lo + 1);
  }
  return out;
}

ZffSignal ZeroFrequencyFilter(const Waveform& w, int period, int trend_passes, Polarity polarity) {
  Require(period >= 2, ErrorCode::kInvalidArgument,
          fmt::format("mean pitch period must be at least 2 samples (got {})", period));
  Require(trend_passes >= 1, ErrorCode::kInvalidArgument, "trend_passes must be >= 1");

  const auto half = static_cast<std::size_t>(std::lround(period / 2.0));
  std::vector<double> z = ZeroFrequencyResonators(PreEmphasize(w.samples()));
  for (int p = 0; p < trend_passes; ++p) z = SubtractLocalMean(z, half);
  for (std::size_t i = 0; i < z.size(); ++i) {
    Require(std::isfinite(z[i]), ErrorCode::kNonFinite,
            fmt::format("zero-frequency filter produced a non-finite value at sample {}", i));
  }
  if (polarity == Polarity::kNegative) {
    for (double& v : z) v = -v;
  }

  ZffSignal out;
  out.samples = std::move(z);
  out.fs = w.fs();
  out.mean_pitch_period = period;
  // Each pass lets the truncated boundary windows contaminate another M samples.
  out.edge_guard = half * static_cast<std::size_t>(trend_passes);
  return out;
}

GciSequence DetectGcis(const ZffSignal& z) {
  GciSequence g;
  g.fs = z.fs;
  const auto& s = z.samples;
  const std::size_t n = s.size();
  if (n < 2 || 2 * z.edge_guard >= n) return g;
  const std::size_t first = std::max<std::size_t>(1, z.edge_guard);
  const std::size_t last = n - z.edge_guard;  // exclusive
  for (std::size_t i = first; i < last; ++i) {
    if (s[i - 1] < 0.0 && s[i] >= 0.0) g.instants.push_back(i);
  }
  return g;
}

ZffAnalysis AnalyzeZff(const Waveform& w, const ZffOptions& opts) {
  int period = EstimateMeanPitchPeriod(w, opts.f0_min, opts.f0_max);
  ZffAnalysis a;
  a.signal = ZeroFrequencyFilter(w, period, opts.trend_passes, opts.polarity);
  a.gcis = DetectGcis(a.signal);
  // The autocorrelation peak of a noisy (breathy) voice can land on a
  // multiple or a fraction of the period. The epoch spacing is far more
  // reliable, so filter once more when the two disagree.
  const auto& g = a.gcis.instants;
  if (g.size() >= 3) {
    std::vector<std::size_t> gaps;
    for (std::size_t i = 1; i < g.size(); ++i) gaps.push_back(g[i] - g[i - 1]);
    std::nth_element(gaps.begin(), gaps.begin() + static_cast<std::ptrdiff_t>(gaps.size() / 2),
                     gaps.end());
    const auto median = static_cast<int>(gaps[gaps.size() / 2]);
    const double lo = w.fs() / opts.f0_max, hi = w.fs() / opts.f0_min;
    if (std::abs(median - period) > kPeriodRefineTolerance * period && median >= lo &&
        median <= hi) {
      period = median;
      a.signal = ZeroFrequencyFilter(w, period, opts.trend_passes, opts.polarity);
      a.gcis = DetectGcis(a.signal);
    }
  }
  return a;
}

}  // namespace glottalkit
