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

// Zero-frequency filtering: a cascade of two 0 Hz resonators (four running
// sums of the pre-emphasized signal) followed by local-mean trend removal.
// Negative-to-positive zero crossings of the result mark glottal closures.

#ifndef GLOTTALKIT_ZFF_HPP_
#define GLOTTALKIT_ZFF_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "glottalkit/signal.hpp"

namespace glottalkit {

enum class Polarity { kPositive, kNegative };

struct ZffSignal {
  std::vector<double> samples;
  double fs = 0.0;
  int mean_pitch_period = 0;
  // Samples this close to either end are not trusted by DetectGcis.
  std::size_t edge_guard = 0;
};

struct GciSequence {
  std::vector<std::size_t> instants;
  double fs = 0.0;
};

struct ZffOptions {
  double f0_min = 60.0;
  double f0_max = 500.0;
  int trend_passes = 2;
  Polarity polarity = Polarity::kPositive;
};

inline constexpr double kVoicingFloor = 0.1;

// Lag of the largest normalized autocorrelation r[k] / r[0] of the
// pre-emphasized signal for k in [fs/f0_max, fs/f0_min]. Throws kUnvoiced when
// that maximum is below kVoicingFloor and kSignalTooShort when fewer than
// 2 fs / f0_min samples are available.
int EstimateMeanPitchPeriod(const Waveform& w, double f0_min = 60.0, double f0_max = 500.0);

// Four cascaded running sums; identical to z[n] = 4z[n-1] - 6z[n-2] + 4z[n-3] - z[n-4] + x[n].
std::vector<double> ZeroFrequencyResonators(std::span<const double> x);

// One pass of local-mean subtraction over 2M+1 samples; windows are truncated
// at the signal ends.
std::vector<double> SubtractLocalMean(std::span<const double> z, std::size_t half_window);

// Pre-emphasis, resonators, then trend_passes rounds of local-mean removal with
// M = round(period / 2). Throws kNonFinite if the cascade overflows.
ZffSignal ZeroFrequencyFilter(const Waveform& w, int period, int trend_passes = 2,
                              Polarity polarity = Polarity::kPositive);

// Reports n+1 for every z[n] < 0 <= z[n+1], skipping instants inside the guard.
GciSequence DetectGcis(const ZffSignal& z);

struct ZffAnalysis {
  ZffSignal signal;
  GciSequence gcis;
};

inline constexpr double kPeriodRefineTolerance = 0.1;

// Pitch estimate, filter and GCI detection with one global period per
// utterance. When the median GCI spacing differs from the autocorrelation
// estimate by more than kPeriodRefineTolerance (relative) the signal is
// filtered again with the median spacing as the period.
ZffAnalysis AnalyzeZff(const Waveform& w, const ZffOptions& opts = {});

}  // namespace glottalkit

#endif  // GLOTTALKIT_ZFF_HPP_
