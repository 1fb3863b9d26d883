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

#include "glottalkit/qcp.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "glottalkit/error.hpp"

namespace glottalkit {

void AmeConfig::Validate() const {
  Require(dq > 0.0 && dq < 1.0, ErrorCode::kInvalidArgument,
          fmt::format("AME duration quotient must be in (0, 1) (got {})", dq));
  Require(pq >= 0.0 && pq < 1.0, ErrorCode::kInvalidArgument,
          fmt::format("AME position quotient must be in [0, 1) (got {})", pq));
  Require(dq + pq <= 1.0 + 1e-12, ErrorCode::kInvalidArgument,
          "AME requires dq + pq <= 1");
  Require(n_ramp >= 0, ErrorCode::kInvalidArgument, "AME ramp length must be >= 0");
  Require(d_min > 0.0 && d_min <= 1.0, ErrorCode::kInvalidArgument,
          fmt::format("AME level must be in (0, 1] (got {})", d_min));
}

std::vector<double> BuildAmeWeights(const GciSequence& gcis, std::size_t n, const AmeConfig& cfg) {
  cfg.Validate();
  std::vector<double> w(n, 1.0);
  const auto len = static_cast<std::ptrdiff_t>(n);
  auto lower = [&](std::ptrdiff_t i, double v) {
    if (i >= 0 && i < len) w[static_cast<std::size_t>(i)] = std::min(w[static_cast<std::size_t>(i)], v);
  };
  const double step = (1.0 - cfg.d_min) / static_cast<double>(cfg.n_ramp + 1);
  for (std::size_t k = 0; k + 1 < gcis.instants.size(); ++k) {
    const auto g = static_cast<std::ptrdiff_t>(gcis.instants[k]);
    const double period = static_cast<double>(gcis.instants[k + 1] - gcis.instants[k]);
    const std::ptrdiff_t start = g + std::lround(cfg.pq * period);
    const std::ptrdiff_t stop = start + std::lround(cfg.dq * period);
    for (std::ptrdiff_t i = start; i < stop; ++i) lower(i, cfg.d_min);
    for (int r = 0; r < cfg.n_ramp; ++r) {
      lower(start - cfg.n_ramp + r, 1.0 - step * (r + 1));
      lower(stop + r, cfg.d_min + step * (r + 1));
    }
  }
  return w;
}

std::size_t DefaultLpOrder(double fs) {
  return static_cast<std::size_t>(std::lround(fs / 1000.0)) + 2;
}

std::vector<double> OverlapAddNormalization(std::size_t n, std::size_t frame_length,
                                            std::size_t hop, WindowKind window) {
  std::vector<double> den(n, 0.0);
  const std::vector<double> win = MakeWindow(window, frame_length);
  const std::size_t frames = FrameCount(n, frame_length, hop);
  for (std::size_t k = 0; k < frames; ++k) {
    for (std::size_t j = 0; j < frame_length; ++j) den[k * hop + j] += win[j];
  }
  return den;
}

QcpResult AnalyzeQcp(const Waveform& w, const QcpOptions& opts) {
  opts.frame.Validate();
  opts.ame.Validate();
  const std::size_t n = w.size();
  const std::size_t order = opts.order > 0 ? opts.order : DefaultLpOrder(w.fs());
  std::size_t frame_length = opts.frame.LengthSamples(w.fs());
  const std::size_t hop = std::max<std::size_t>(1, opts.frame.ShiftSamples(w.fs()));
  frame_length = std::min(frame_length, n);
  Require(frame_length > order, ErrorCode::kSignalTooShort,
          fmt::format("signal of {} samples is too short for order-{} QCP analysis", n, order));

  QcpResult result;
  ZffAnalysis zff = AnalyzeZff(w, opts.zff);
  Require(!zff.gcis.instants.empty(), ErrorCode::kUnvoiced, "unvoiced/aperiodic: no GCIs detected");
  result.gcis = std::move(zff.gcis);
  result.weights = BuildAmeWeights(result.gcis, n, opts.ame);

  const auto s = w.samples();
  const std::vector<double> analysis =
      opts.pre_emphasize ? PreEmphasize(s) : std::vector<double>(s.begin(), s.end());
  const std::vector<double> win = MakeWindow(opts.frame.window, frame_length);
  const std::size_t frames = FrameCount(n, frame_length, hop);

  std::vector<double> num(n, 0.0);
  std::vector<double> den(n, 0.0);
  auto residual_at = [&](const VocalTractFilter& f, std::size_t i) {
    double acc = s[i];
    const std::size_t kmax = std::min(f.order(), i);
    for (std::size_t k = 1; k <= kmax; ++k) acc += f.a[k - 1] * s[i - k];
    return acc;
  };

  for (std::size_t k = 0; k < frames; ++k) {
    const std::size_t start = k * hop;
    std::span<const double> frame(analysis.data() + start, frame_length);
    std::span<const double> weights(result.weights.data() + start, frame_length);
    VocalTractFilter f;
    try {
      f = Stabilize(WeightedLinearPrediction(frame, weights, order));
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("frame {} (sample {}): {}", k, start, e.what()));
    }
    for (std::size_t j = 0; j < frame_length; ++j) {
      num[start + j] += win[j] * residual_at(f, start + j);
      den[start + j] += win[j];
    }
    result.frames.push_back({start, std::move(f)});
  }

  GlottalSource& out = result.source;
  out.fs = w.fs();
  out.method = SourceMethod::kQcp;
  out.samples.resize(n);
  const VocalTractFilter& tail = result.frames.back().filter;
  for (std::size_t i = 0; i < n; ++i) {
    out.samples[i] = den[i] > 0.0 ? num[i] / den[i] : residual_at(tail, i);
  }
  if (opts.integrate) {
    double state = 0.0;
    for (double& v : out.samples) {
      state = v + opts.leak * state;
      v = state;
    }
  }
  return result;
}

GlottalSource QcpGlottalSource(const Waveform& w, const QcpOptions& opts) {
  return AnalyzeQcp(w, opts).source;
}

}  // namespace glottalkit
