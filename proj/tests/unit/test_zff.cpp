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

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <vector>

#include "doctest.h"
#include "frozen_values.hpp"
#include "glottalkit/signal.hpp"
#include "glottalkit/source.hpp"
#include "glottalkit/synth.hpp"
#include "glottalkit/zff.hpp"
#include "support/expect.hpp"
#include "support/inputs.hpp"
#include "support/oracles.hpp"

namespace gk = glottalkit;
namespace fz = glottalkit::frozen;
using gk::ErrorCode;
using gk::VoiceQuality;
using gk::testing::CodeOf;

namespace {

gk::ZffSignal Raw(std::vector<double> s) {
  gk::ZffSignal z;
  z.samples = std::move(s);
  z.fs = 16000.0;
  z.mean_pitch_period = 2;
  return z;
}

double MaxAbs(std::span<const double> x) {
  double m = 0.0;
  for (double v : x) m = std::max(m, std::abs(v));
  return m;
}

}  // namespace

TEST_SUITE("zff") {

TEST_CASE("pitch period estimation") {
  const gk::Waveform sine(gk::testing::Sine(8000, 200.0, 16000.0), 16000.0);
  CHECK(gk::EstimateMeanPitchPeriod(sine) == 80);
  const gk::Waveform train(gk::testing::ImpulseTrain(8000, 100, 13, 1.0), 16000.0);
  CHECK(gk::EstimateMeanPitchPeriod(train) == 100);
}

TEST_CASE("white noise is rejected as unvoiced") {
  const auto noise = gk::testing::NoiseSignal(11, 16000);
  // Independent check that the peak really is below the voicing floor.
  const auto x = gk::PreEmphasize(noise);
  double peak = -1.0;
  for (std::size_t k = 32; k <= 267; ++k) {
    peak = std::max(peak, gk::testing::NormalizedAutocorrelation(x, k));
  }
  CHECK(peak == doctest::Approx(fz::kNoiseAutocorrPeak).epsilon(1e-9));
  CHECK(peak < gk::kVoicingFloor);
  CHECK(CodeOf([&] { gk::EstimateMeanPitchPeriod(gk::Waveform(noise, 16000.0)); }) ==
        ErrorCode::kUnvoiced);
}

TEST_CASE("pitch estimation preconditions") {
  const gk::Waveform short_sig(gk::testing::Sine(400, 200.0, 16000.0), 16000.0);
  CHECK(CodeOf([&] { gk::EstimateMeanPitchPeriod(short_sig); }) == ErrorCode::kSignalTooShort);
  const gk::Waveform sine(gk::testing::Sine(8000, 200.0, 16000.0), 16000.0);
  CHECK(CodeOf([&] { gk::EstimateMeanPitchPeriod(sine, 300.0, 100.0); }) ==
        ErrorCode::kInvalidArgument);
  const gk::Waveform silent(std::vector<double>(8000, 0.0), 16000.0);
  CHECK(CodeOf([&] { gk::EstimateMeanPitchPeriod(silent); }) == ErrorCode::kUnvoiced);
}

TEST_CASE("resonator cascade on an impulse") {
  std::vector<double> impulse(6, 0.0);
  impulse[0] = 1.0;
  CHECK(gk::ZeroFrequencyResonators(impulse) == std::vector<double>{1, 4, 10, 20, 35, 56});
}

TEST_CASE("resonator cascade equals the fourth-order recursion") {
  const auto x = gk::testing::NoiseSignal(21, 500);
  const auto z = gk::ZeroFrequencyResonators(x);
  std::vector<double> y(x.size(), 0.0);
  for (std::size_t n = 0; n < x.size(); ++n) {
    double v = x[n];
    if (n >= 1) v += 4.0 * y[n - 1];
    if (n >= 2) v -= 6.0 * y[n - 2];
    if (n >= 3) v += 4.0 * y[n - 3];
    if (n >= 4) v -= y[n - 4];
    y[n] = v;
  }
  const double scale = MaxAbs(y);
  for (std::size_t n = 0; n < x.size(); ++n) REQUIRE(std::abs(z[n] - y[n]) <= 1e-9 * scale);
}

TEST_CASE("zero input gives zero output") {
  const gk::Waveform zero(std::vector<double>(1000, 0.0), 16000.0);
  const auto z = gk::ZeroFrequencyFilter(zero, 80);
  CHECK(z.samples.size() == 1000);
  CHECK(MaxAbs(z.samples) == 0.0);
  CHECK(z.mean_pitch_period == 80);
}

TEST_CASE("impulse-train zero crossings match the exact oracle") {
  const auto s = gk::testing::ImpulseTrain(fz::kZffImpulseLength, fz::kZffImpulsePeriod,
                                           fz::kZffImpulseOffset);
  const auto z = gk::ZeroFrequencyFilter(gk::Waveform(s, 16000.0), 100, 2);
  std::vector<std::size_t> npzc;
  for (std::size_t i = 1; i < z.samples.size(); ++i) {
    if (z.samples[i - 1] < 0.0 && z.samples[i] >= 0.0) npzc.push_back(i);
  }
  CHECK(npzc == std::vector<std::size_t>(fz::kZffImpulseNpzc.begin(), fz::kZffImpulseNpzc.end()));

  // Interior crossings sit within one sample of an impulse.
  const auto gcis = gk::DetectGcis(z);
  REQUIRE(!gcis.instants.empty());
  for (auto g : gcis.instants) {
    const long off = static_cast<long>(g) - static_cast<long>(fz::kZffImpulseOffset);
    const long nearest = std::lround(static_cast<double>(off) / 100.0) * 100;
    CHECK(std::labs(off - nearest) <= 1);
  }
}

TEST_CASE("filter agrees with a long-double reference") {
  auto s = gk::testing::Sine(4000, 150.0, 16000.0, 0.5);
  const auto noise = gk::testing::NoiseSignal(5, s.size());
  for (std::size_t i = 0; i < s.size(); ++i) s[i] += 0.05 * noise[i];
  for (int passes : {1, 2, 3}) {
    const auto z = gk::ZeroFrequencyFilter(gk::Waveform(s, 16000.0), 107, passes);
    const auto ref = gk::testing::ZffReference(s, 54, passes);
    // The trend removal cancels a cubic ramp, so accuracy is bounded by the
    // rounding of the pre-trend signal, not by the size of the output.
    const double conditioning =
        MaxAbs(gk::ZeroFrequencyResonators(gk::PreEmphasize(s))) * 1e-14;
    double worst = 0.0;
    for (std::size_t i = 0; i < s.size(); ++i) worst = std::max(worst, std::abs(z.samples[i] - ref[i]));
    CHECK(worst <= conditioning);
    CHECK(worst <= 1e-6 * MaxAbs(ref));
  }
}

TEST_CASE("filter is linear") {
  const auto x = gk::testing::NoiseSignal(1, 4000);
  const auto y = gk::testing::Sine(4000, 180.0, 16000.0);
  const double a = 0.7, b = -2.3;
  std::vector<double> mix(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) mix[i] = a * x[i] + b * y[i];
  const auto zx = gk::ZeroFrequencyFilter(gk::Waveform(x, 16000.0), 89).samples;
  const auto zy = gk::ZeroFrequencyFilter(gk::Waveform(y, 16000.0), 89).samples;
  const auto zm = gk::ZeroFrequencyFilter(gk::Waveform(mix, 16000.0), 89).samples;
  std::vector<double> expect(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) expect[i] = a * zx[i] + b * zy[i];
  const double scale = MaxAbs(expect);
  for (std::size_t i = 0; i < x.size(); ++i) REQUIRE(std::abs(zm[i] - expect[i]) <= 1e-9 * scale);
}

TEST_CASE("trend removal leaves near-zero window means") {
  const auto s = gk::SynthesizeVowel(gk::MakePreset(gk::VoiceQuality::kModal, gk::Vowel::kA),
                                     16000.0, 3);
  const int period = gk::EstimateMeanPitchPeriod(s.wave);
  const std::size_t half = static_cast<std::size_t>(std::lround(period / 2.0));
  const auto zo = gk::ZeroFrequencyResonators(gk::PreEmphasize(s.wave.samples()));
  const double rms_zo = gk::Rms(zo);
  const auto z = gk::ZeroFrequencyFilter(s.wave, period, 2).samples;
  // Full in-bounds windows only, away from the truncated boundary windows.
  double worst = 0.0;
  for (std::size_t c = 3 * half; c + 3 * half < z.size(); ++c) {
    double acc = 0.0;
    for (std::size_t j = c - half; j <= c + half; ++j) acc += z[j];
    worst = std::max(worst, std::abs(acc / static_cast<double>(2 * half + 1)));
  }
  CHECK(worst <= 1e-6 * rms_zo);
}

TEST_CASE("zero-crossing detection") {
  CHECK(gk::DetectGcis(Raw({1, 2, 3, 0.5})).instants.empty());
  CHECK(gk::DetectGcis(Raw({-1, 1, -1, 1})).instants == std::vector<std::size_t>{1, 3});
  CHECK(gk::DetectGcis(Raw({-1, 0, -1, 0})).instants == std::vector<std::size_t>{1, 3});
  auto guarded = Raw({-1, 1, -1, 1, -1, 1, -1, 1});
  guarded.edge_guard = 2;
  CHECK(gk::DetectGcis(guarded).instants == std::vector<std::size_t>{3, 5});
}

TEST_CASE("gci count matches f0 times duration") {
  for (std::size_t period : {50u, 80u, 123u}) {
    const auto s = gk::testing::ImpulseTrain(16000, period, 7);
    const auto a = gk::AnalyzeZff(gk::Waveform(s, 16000.0));
    CHECK(a.signal.mean_pitch_period == static_cast<int>(period));
    const double interior = static_cast<double>(16000 - 2 * a.signal.edge_guard);
    const double expected = interior / static_cast<double>(period);
    CHECK(std::abs(static_cast<double>(a.gcis.instants.size()) - expected) <= 1.0);
    CHECK(std::is_sorted(a.gcis.instants.begin(), a.gcis.instants.end()));
  }
}

TEST_CASE("synthetic vowel periods") {
  for (std::uint64_t seed : {0u, 17u}) {
    for (auto v : gk::kAllVowels) {
      for (auto q : gk::kAllQualities) {
        auto p = gk::MakePreset(q, v, 200.0);
        p.jitter_pct = 0.0;
        p.shimmer_pct = 0.0;
        const auto s = gk::SynthesizeVowel(p, 16000.0, seed);
        const auto a = gk::AnalyzeZff(s.wave);
        REQUIRE(a.gcis.instants.size() > 30);
        for (std::size_t i = 1; i < a.gcis.instants.size(); ++i) {
          const long gap = static_cast<long>(a.gcis.instants[i] - a.gcis.instants[i - 1]);
          CHECK(std::labs(gap - 80) <= 2);
        }
        // Each detection sits near a synthesized closure, at an offset that
        // depends on the vowel and quality but not on the period.
        long lo = 1000, hi = -1000;
        for (auto g : a.gcis.instants) {
          long best = 1000;
          for (auto c : s.closures) {
            const long d = static_cast<long>(g) - static_cast<long>(c);
            if (std::labs(d) < std::labs(best)) best = d;
          }
          lo = std::min(lo, best);
          hi = std::max(hi, best);
        }
        CHECK(std::max(-lo, hi) <= 16);
        CHECK(hi - lo <= 2);
      }
    }
  }
}

TEST_CASE("epoch spacing corrects an octave error in the period estimate") {
  // Aspiration noise puts the autocorrelation maximum of this breathy /i/ at
  // twice the period.
  auto p = gk::MakePreset(VoiceQuality::kBreathy, gk::Vowel::kI, 200.0);
  p.jitter_pct = 0.0;
  p.shimmer_pct = 0.0;
  const auto s = gk::SynthesizeVowel(p, 16000.0, 0);
  CHECK(gk::EstimateMeanPitchPeriod(s.wave) == 160);
  const auto a = gk::AnalyzeZff(s.wave);
  CHECK(a.signal.mean_pitch_period == 80);
  CHECK(a.signal.edge_guard == 80);
  // A correct estimate is left alone.
  auto m = gk::MakePreset(VoiceQuality::kModal, gk::Vowel::kI, 200.0);
  const auto sm = gk::SynthesizeVowel(m, 16000.0, 0);
  CHECK(gk::AnalyzeZff(sm.wave).signal.mean_pitch_period == gk::EstimateMeanPitchPeriod(sm.wave));
}

TEST_CASE("polarity flag flips the signal") {
  const auto s = gk::testing::ImpulseTrain(4000, 100, 37, 1.0);
  const gk::Waveform w(s, 16000.0);
  const auto pos = gk::ZeroFrequencyFilter(w, 100, 2, gk::Polarity::kPositive);
  const auto neg = gk::ZeroFrequencyFilter(w, 100, 2, gk::Polarity::kNegative);
  for (std::size_t i = 0; i < s.size(); ++i) REQUIRE(neg.samples[i] == -pos.samples[i]);
  // With positive impulses the negative polarity recovers the impulse locations.
  for (auto g : gk::DetectGcis(neg).instants) {
    const long off = static_cast<long>(g) - 37;
    CHECK(std::labs(off - std::lround(off / 100.0) * 100) <= 1);
  }
}

TEST_CASE("argument validation") {
  const gk::Waveform w(std::vector<double>(100, 1.0), 16000.0);
  CHECK(CodeOf([&] { gk::ZeroFrequencyFilter(w, 1); }) == ErrorCode::kInvalidArgument);
  CHECK(CodeOf([&] { gk::ZeroFrequencyFilter(w, 80, 0); }) == ErrorCode::kInvalidArgument);
}

TEST_CASE("zff source zeroes the guarded edges") {
  const auto s = gk::SynthesizeVowel(gk::MakePreset(gk::VoiceQuality::kModal, gk::Vowel::kE),
                                     16000.0, 2);
  const auto src = gk::ZffGlottalSource(s.wave);
  CHECK(src.samples.size() == s.wave.size());
  CHECK(src.method == gk::SourceMethod::kZff);
  CHECK(src.samples.front() == 0.0);
  CHECK(src.samples.back() == 0.0);
  CHECK(MaxAbs(src.samples) > 0.0);
}

}  // TEST_SUITE
