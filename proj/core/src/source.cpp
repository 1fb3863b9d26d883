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

#include "glottalkit/source.hpp"

#include <algorithm>

namespace glottalkit {

std::string_view SourceMethodName(SourceMethod m) {
  return m == SourceMethod::kQcp ? "qcp" : "zff";
}

GlottalSource ZffGlottalSource(const Waveform& w, const ZffOptions& opts) {
  ZffAnalysis a = AnalyzeZff(w, opts);
  GlottalSource g;
  g.fs = w.fs();
  g.method = SourceMethod::kZff;
  g.samples = std::move(a.signal.samples);
  const std::size_t guard = std::min(a.signal.edge_guard, g.samples.size() / 2);
  std::fill(g.samples.begin(), g.samples.begin() + static_cast<std::ptrdiff_t>(guard), 0.0);
  std::fill(g.samples.end() - static_cast<std::ptrdiff_t>(guard), g.samples.end(), 0.0);
  return g;
}

}  // namespace glottalkit
