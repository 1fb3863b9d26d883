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

#include "glottalkit/signal.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <utility>

#include <fmt/format.h>

#include "glottalkit/error.hpp"

namespace glottalkit {

Waveform::Waveform(std::vector<double> samples, double fs)
    : samples_(std::move(samples)), fs_(fs) {
  Require(std::isfinite(fs_) && fs_ > 0.0, ErrorCode::kInvalidArgument,
          fmt::format("sample rate must be positive (got {})", fs_));
  Require(!samples_.empty(), ErrorCode::kEmptyAudio, "waveform has no samples");
  for (std::size_t i = 0; i < samples_.size(); ++i) {
    Require(std::isfinite(samples_[i]), ErrorCode::kNonFinite,
            fmt::format("non-finite sample at index {}", i));
  }
}

void FrameSpec::Validate() const {
  Require(shift_ms > 0.0 && shift_ms <= length_ms, ErrorCode::kInvalidArgument,
          fmt::format("frame spec requires 0 < shift <= length (got {} ms / {} ms)",
                      length_ms, shift_ms));
}

std::size_t FrameSpec::LengthSamples(double fs) const {
  return static_cast<std::size_t>(std::lround(length_ms * fs / 1000.0));
}

std::size_t FrameSpec::ShiftSamples(double fs) const {
  return static_cast<std::size_t>(std::lround(shift_ms * fs / 1000.0));
}

std::vector<double> MakeWindow(WindowKind kind, std::size_t length) {
  std::vector<double> win(length, 1.0);
  if (kind == WindowKind::kHamming) {
    const double step = 2.0 * std::numbers::pi / static_cast<double>(length);
    for (std::size_t n = 0; n < length; ++n) {
      win[n] = 0.54 - 0.46 * std::cos(step * static_cast<double>(n));
    }
  }
  return win;
}

std::size_t FrameCount(std::size_t n, std::size_t length, std::size_t hop) {
  if (length == 0 || hop == 0 || n < length) return 0;
  return (n - length) / hop + 1;
}

std::vector<double> PreEmphasize(std::span<const double> s) {
  std::vector<double> x(s.size());
  if (s.empty()) return x;
  x[0] = s[0];
  for (std::size_t n = 1; n < s.size(); ++n) x[n] = s[n] - s[n - 1];
  return x;
}

Waveform PreEmphasize(const Waveform& w) {
  return Waveform(PreEmphasize(w.samples()), w.fs());
}

std::vector<double> CumulativeSum(std::span<const double> x) {
  std::vector<double> out(x.size());
  double acc = 0.0;
  for (std::size_t n = 0; n < x.size(); ++n) {
    acc += x[n];
    out[n] = acc;
  }
  return out;
}

FrameMatrix FrameSignal(const Waveform& w, const FrameSpec& spec) {
  spec.Validate();
  FrameMatrix fm;
  fm.frame_length = spec.LengthSamples(w.fs());
  fm.hop = spec.ShiftSamples(w.fs());
  Require(fm.frame_length >= 1 && fm.hop >= 1, ErrorCode::kInvalidArgument,
          "frame spec rounds to zero samples at this sample rate");
  fm.count = FrameCount(w.size(), fm.frame_length, fm.hop);
  Require(fm.count > 0, ErrorCode::kSignalTooShort,
          fmt::format("signal of {} samples is shorter than one {}-sample frame",
                      w.size(), fm.frame_length));
  const std::vector<double> win = MakeWindow(spec.window, fm.frame_length);
  fm.data.resize(fm.count * fm.frame_length);
  const auto s = w.samples();
  for (std::size_t k = 0; k < fm.count; ++k) {
    auto dst = fm.frame(k);
    const std::size_t start = k * fm.hop;
    for (std::size_t j = 0; j < fm.frame_length; ++j) dst[j] = win[j] * s[start + j];
  }
  return fm;
}

Waveform PeakNormalize(const Waveform& w, double peak) {
  double m = 0.0;
  for (double v : w.samples()) m = std::max(m, std::abs(v));
  if (m == 0.0) return w;
  std::vector<double> out(w.samples().begin(), w.samples().end());
  const double g = peak / m;
  for (double& v : out) v *= g;
  return Waveform(std::move(out), w.fs());
}

double Rms(std::span<const double> x) {
  if (x.empty()) return 0.0;
  double acc = 0.0;
  for (double v : x) acc += v * v;
  return std::sqrt(acc / static_cast<double>(x.size()));
}

}  // namespace glottalkit
