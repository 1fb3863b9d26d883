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

#ifndef GLOTTALKIT_SOURCE_HPP_
#define GLOTTALKIT_SOURCE_HPP_

#include <string_view>
#include <vector>

#include "glottalkit/signal.hpp"
#include "glottalkit/zff.hpp"

namespace glottalkit {

enum class SourceMethod { kQcp, kZff };

struct GlottalSource {
  std::vector<double> samples;
  double fs = 0.0;
  SourceMethod method = SourceMethod::kQcp;

  Waveform ToWaveform() const { return Waveform(samples, fs); }
};

std::string_view SourceMethodName(SourceMethod m);

// The ZFF signal as an approximate source; samples inside the edge guard are
// zeroed because the truncated trend windows leave polynomial residue there.
GlottalSource ZffGlottalSource(const Waveform& w, const ZffOptions& opts = {});

}  // namespace glottalkit

#endif  // GLOTTALKIT_SOURCE_HPP_
