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

#include "glottalkit/pipeline.hpp"

#include <set>

#include <fmt/format.h>

#include "glottalkit/error.hpp"
#include "glottalkit/parallel.hpp"

namespace glottalkit {

SourceVariant BaseVariant(SourceVariant v) {
  switch (v) {
    case SourceVariant::kSpeechQcp:
    case SourceVariant::kSpeechZff:
      return SourceVariant::kSpeech;
    case SourceVariant::kNsaQcp:
    case SourceVariant::kNsaZff:
      return SourceVariant::kNsa;
    default:
      return v;
  }
}

std::optional<SourceMethod> VariantMethod(SourceVariant v) {
  switch (v) {
    case SourceVariant::kSpeechQcp:
    case SourceVariant::kNsaQcp:
      return SourceMethod::kQcp;
    case SourceVariant::kSpeechZff:
    case SourceVariant::kNsaZff:
      return SourceMethod::kZff;
    default:
      return std::nullopt;
  }
}

Waveform DeriveVariant(const Waveform& raw, SourceVariant target, const PipelineOptions& opts) {
  const auto method = VariantMethod(target);
  if (!method) return raw;
  if (*method == SourceMethod::kQcp) return QcpGlottalSource(raw, opts.qcp).ToWaveform();
  return ZffGlottalSource(raw, opts.zff).ToWaveform();
}

std::vector<ResolvedRow> ResolveRows(std::span<const ManifestRow> rows,
                                     std::optional<SourceVariant> variant) {
  std::vector<ResolvedRow> out;
  if (!variant) {
    std::set<SourceVariant> present;
    for (const auto& r : rows) present.insert(r.variant);
    Require(present.size() == 1, ErrorCode::kInvalidArgument,
            present.empty() ? std::string("manifest has no rows")
                            : std::string("manifest mixes source variants; select one with --variant"));
    for (const auto& r : rows) out.push_back({r, false});
    return out;
  }
  for (const auto& r : rows) {
    if (r.variant == *variant) out.push_back({r, false});
  }
  if (out.empty() && BaseVariant(*variant) != *variant) {
    for (const auto& r : rows) {
      if (r.variant == BaseVariant(*variant)) {
        ResolvedRow rr{r, true};
        rr.row.variant = *variant;
        out.push_back(std::move(rr));
      }
    }
  }
  Require(!out.empty(), ErrorCode::kInvalidArgument,
          fmt::format("manifest has no rows usable for variant {}", SourceVariantName(*variant)));
  return out;
}

FeatureVector ExtractFeature(const ResolvedRow& r, const PipelineOptions& opts) {
  if (opts.feature == FeatureKind::kEmbedding) {
    Require(!r.derive, ErrorCode::kInvalidArgument,
            "embedding features cannot be derived; the manifest must list the variant's VQEMB1 files");
    Require(opts.layer.has_value(), ErrorCode::kInvalidArgument,
            "embedding features need a layer index");
    const EmbeddingSet set = ReadEmbeddingFile(r.row.path);
    Require(set.variant() == r.row.variant, ErrorCode::kInvalidArgument,
            fmt::format("embedding file variant {} disagrees with manifest variant {}",
                        SourceVariantName(set.variant()), SourceVariantName(r.row.variant)));
    return SelectLayer(set, *opts.layer);
  }
  Waveform w = LoadWav(r.row.path, opts.wav);
  if (r.derive) w = DeriveVariant(w, r.row.variant, opts);
  return ExtractSpectralFeature(w, opts.feature, opts.spectral);
}

LabeledDataset BuildDataset(std::span<const ManifestRow> rows, const PipelineOptions& opts) {
  const auto resolved = ResolveRows(rows, opts.variant);
  std::vector<std::vector<double>> features(resolved.size());
  ParallelFor(resolved.size(), opts.workers, [&](std::size_t i) {
    try {
      features[i] = ExtractFeature(resolved[i], opts).values();
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("record {} ({}): {}", i, resolved[i].row.path.string(),
                                        e.what()));
    }
  });
  const std::size_t dim = features.front().size();
  RowMatrix x(static_cast<Eigen::Index>(resolved.size()), static_cast<Eigen::Index>(dim));
  std::vector<ManifestRow> records;
  for (std::size_t i = 0; i < resolved.size(); ++i) {
    Require(features[i].size() == dim, ErrorCode::kDimensionMismatch,
            fmt::format("record {} ({}): feature dim {} differs from {}", i,
                        resolved[i].row.path.string(), features[i].size(), dim));
    x.row(static_cast<Eigen::Index>(i)) =
        Eigen::Map<const Eigen::RowVectorXd>(features[i].data(), static_cast<Eigen::Index>(dim));
    records.push_back(resolved[i].row);
  }
  return LabeledDataset(std::move(records), std::move(x), opts.feature);
}

}  // namespace glottalkit
