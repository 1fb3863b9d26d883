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

// Manifest-to-feature plumbing: resolves the requested source variant (loading
// it directly or deriving it by inverse filtering), then extracts features.

#ifndef GLOTTALKIT_PIPELINE_HPP_
#define GLOTTALKIT_PIPELINE_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "glottalkit/dataset.hpp"
#include "glottalkit/embeddings.hpp"
#include "glottalkit/features.hpp"
#include "glottalkit/qcp.hpp"
#include "glottalkit/signal.hpp"
#include "glottalkit/source.hpp"
#include "glottalkit/spectral.hpp"
#include "glottalkit/wav.hpp"
#include "glottalkit/zff.hpp"

namespace glottalkit {

// speech-qcp -> speech, nsa-zff -> nsa, etc.; speech and nsa map to themselves.
SourceVariant BaseVariant(SourceVariant v);
std::optional<SourceMethod> VariantMethod(SourceVariant v);

struct PipelineOptions {
  FeatureKind feature = FeatureKind::kMel80;
  std::optional<std::size_t> layer;  // required for kEmbedding
  std::optional<SourceVariant> variant;
  QcpOptions qcp;
  ZffOptions zff;
  SpectralOptions spectral;
  WavReadOptions wav;
  std::size_t workers = 1;
};

// Applies the inverse filter selected by target to a raw recording.
Waveform DeriveVariant(const Waveform& raw, SourceVariant target, const PipelineOptions& opts);

struct ResolvedRow {
  ManifestRow row;   // variant set to the requested one
  bool derive = false;  // row.path holds the base recording
};

// Rows whose variant equals the request are used as is. When none exist and
// the request is a derived variant, rows of its base variant are used and
// derived on the fly. Without a request, the manifest must hold one variant.
// Throws kInvalidArgument when nothing matches.
std::vector<ResolvedRow> ResolveRows(std::span<const ManifestRow> rows,
                                     std::optional<SourceVariant> variant);

FeatureVector ExtractFeature(const ResolvedRow& r, const PipelineOptions& opts);

// Errors carry the record index and path.
LabeledDataset BuildDataset(std::span<const ManifestRow> rows, const PipelineOptions& opts);

}  // namespace glottalkit

#endif  // GLOTTALKIT_PIPELINE_HPP_
