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

// Signal containers and the framing/windowing helpers shared by the DSP
// modules. Everything here is a pure function of its inputs.

#ifndef GLOTTALKIT_SIGNAL_HPP_
#define GLOTTALKIT_SIGNAL_HPP_

#include <cstddef>
#include <span>
#include <vector>

namespace glottalkit {

// Uniformly sampled, finite, non-empty real signal.
class Waveform {
 public:
  // Throws kInvalidArgument (fs <= 0), kEmptyAudio or kNonFinite.
  Waveform(std::vector<double> samples, double fs);

  std::span<const double> samples() const { return samples_; }
  double fs() const { return fs_; }
  std::size_t size() const { return samples_.size(); }
  double duration_s() const { return static_cast<double>(samples_.size()) / fs_; }

  double operator[](std::size_t i) const { return samples_[i]; }

  // Moves the samples out; the waveform is left in a moved-from state.
  std::vector<double> release() && { return std::move(samples_); }

 private:
  std::vector<double> samples_;
  double fs_;
};

enum class WindowKind { kHamming, kRectangular };

struct FrameSpec {
  double length_ms = 25.0;
  double shift_ms = 5.0;
  WindowKind window = WindowKind::kHamming;

  // Throws kInvalidArgument unless 0 < shift_ms <= length_ms.
  void Validate() const;
  std::size_t LengthSamples(double fs) const;
  std::size_t ShiftSamples(double fs) const;
};

// Periodic convention: hamming[n] = 0.54 - 0.46 cos(2 pi n / L).
std::vector<double> MakeWindow(WindowKind kind, std::size_t length);

// Row-major matrix of equally sized frames.
struct FrameMatrix {
  std::size_t frame_length = 0;
  std::size_t hop = 0;
  std::size_t count = 0;
  std::vector<double> data;

  std::span<const double> frame(std::size_t k) const {
    return {data.data() + k * frame_length, frame_length};
  }
  std::span<double> frame(std::size_t k) {
    return {data.data() + k * frame_length, frame_length};
  }
};

// floor((N - L) / H) + 1; zero when N < L.
std::size_t FrameCount(std::size_t n, std::size_t length, std::size_t hop);

// x[0] = s[0], x[n] = s[n] - s[n-1].
Waveform PreEmphasize(const Waveform& w);
std::vector<double> PreEmphasize(std::span<const double> s);

// Running sum; inverse of PreEmphasize.
std::vector<double> CumulativeSum(std::span<const double> x);

// Frame k, sample j = window[j] * s[k*H + j]. Throws kSignalTooShort when the
// signal is shorter than one frame.
FrameMatrix FrameSignal(const Waveform& w, const FrameSpec& spec);

// Scales so that max |s| == peak. Silent signals are returned unchanged.
Waveform PeakNormalize(const Waveform& w, double peak = 1.0);

double Rms(std::span<const double> x);

}  // namespace glottalkit

#endif  // GLOTTALKIT_SIGNAL_HPP_
