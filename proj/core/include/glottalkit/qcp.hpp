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

// Quasi-closed-phase glottal inverse filtering. The vocal tract is estimated
// per frame by weighted linear prediction whose temporal weight (the
// attenuated-main-excitation function) suppresses the residual around each
// glottal closure; the input is then inverse filtered with that model.

#ifndef GLOTTALKIT_QCP_HPP_
#define GLOTTALKIT_QCP_HPP_

#include <cstddef>
#include <span>
#include <vector>

#include "glottalkit/lp.hpp"
#include "glottalkit/signal.hpp"
#include "glottalkit/source.hpp"
#include "glottalkit/zff.hpp"

namespace glottalkit {

// Shape of the attenuation applied once per glottal cycle [g_k, g_k+1) of
// length T: weight d_min on [g_k + round(pq T), g_k + round(pq T) + round(dq T)),
// linear ramps of n_ramp samples on both sides, 1 elsewhere.
//
// dq and pq locate the attenuated interval. The defaults place it over the last
// quarter of each cycle so that, together with the trailing ramp, it covers the
// main excitation at the next closure and leaves the closed phase at full weight.
struct AmeConfig {
  double dq = 0.25;
  double pq = 0.75;
  int n_ramp = 7;
  double d_min = 1e-5;

  void Validate() const;
};

// Weights in [d_min, 1] for a signal of n samples. Overlapping cycles keep the
// smaller weight.
std::vector<double> BuildAmeWeights(const GciSequence& gcis, std::size_t n, const AmeConfig& cfg);

// Default order round(fs / 1000) + 2.
std::size_t DefaultLpOrder(double fs);

struct QcpOptions {
  AmeConfig ame;
  FrameSpec frame{25.0, 5.0, WindowKind::kHamming};
  std::size_t order = 0;  // 0 selects DefaultLpOrder
  bool pre_emphasize = true;
  bool integrate = false;
  double leak = 0.99;
  ZffOptions zff;
};

// Per-sample normalization of the synthesis windows: den[n] = sum_k win[n - kH]
// over the frames covering n (zero where no frame covers n).
std::vector<double> OverlapAddNormalization(std::size_t n, std::size_t frame_length,
                                            std::size_t hop, WindowKind window);

struct QcpFrameModel {
  std::size_t start = 0;
  VocalTractFilter filter;
};

struct QcpResult {
  GlottalSource source;
  GciSequence gcis;
  std::vector<double> weights;
  std::vector<QcpFrameModel> frames;
};

// GCIs come from a global ZFF pass over the utterance; AME weights are built once
// for the whole signal and sliced per frame. Each frame's residual is computed on
// the unweighted input using the true signal history, and the residual frames are
// joined by normalized weighted overlap-add. Throws kUnvoiced / kDegenerateFrame.
QcpResult AnalyzeQcp(const Waveform& w, const QcpOptions& opts = {});

GlottalSource QcpGlottalSource(const Waveform& w, const QcpOptions& opts = {});

}  // namespace glottalkit

#endif  // GLOTTALKIT_QCP_HPP_
