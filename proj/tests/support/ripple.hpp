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

// Formant-band envelope ripple: how far the spectral envelope of an estimate
// departs from that of the synthesizer's true source.

#ifndef GLOTTALKIT_TESTS_SUPPORT_RIPPLE_HPP_
#define GLOTTALKIT_TESTS_SUPPORT_RIPPLE_HPP_

#include <algorithm>
#include <cmath>
#include <numbers>
#include <span>
#include <vector>

#include "glottalkit/lp.hpp"

namespace glottalkit::testing {

inline constexpr double kRippleLoHz = 200.0;
inline constexpr double kRippleHiHz = 4000.0;
inline constexpr std::size_t kEnvelopeOrder = 18;

// All-pole envelope in dB on a 10 Hz grid over the formant band.
inline std::vector<double> EnvelopeDb(std::span<const double> s, double fs) {
  const auto f = CovarianceLinearPrediction(s, kEnvelopeOrder);
  std::vector<double> db;
  for (double hz = kRippleLoHz; hz <= kRippleHiHz; hz += 10.0) {
    db.push_back(-20.0 * std::log10(FilterMagnitude(f, 2.0 * std::numbers::pi * hz / fs)));
  }
  return db;
}

// Peak-to-dip range (dB) of the envelope difference estimate - truth after
// removing its mean, i.e. the residual resonance structure.
inline double EnvelopeRipple(std::span<const double> estimate, std::span<const double> truth,
                             double fs) {
  const auto e = EnvelopeDb(estimate, fs);
  const auto t = EnvelopeDb(truth, fs);
  double lo = 1e300, hi = -1e300;
  for (std::size_t i = 0; i < e.size(); ++i) {
    lo = std::min(lo, e[i] - t[i]);
    hi = std::max(hi, e[i] - t[i]);
  }
  return hi - lo;
}

}  // namespace glottalkit::testing

#endif  // GLOTTALKIT_TESTS_SUPPORT_RIPPLE_HPP_
