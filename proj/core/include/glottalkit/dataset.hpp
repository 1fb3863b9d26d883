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

// Dataset manifests and feature tables.
//
// Manifest: UTF-8 CSV with header speaker_id,label,vowel,repetition,variant,path.
// Relative paths are resolved against the manifest's directory on read.
// Feature CSV: the six manifest columns, then kind, then x0..x{D-1}.

#ifndef GLOTTALKIT_DATASET_HPP_
#define GLOTTALKIT_DATASET_HPP_

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "glottalkit/embeddings.hpp"
#include "glottalkit/features.hpp"
#include "glottalkit/labels.hpp"
#include "glottalkit/matrix.hpp"

namespace glottalkit {

inline constexpr std::string_view kManifestHeader =
    "speaker_id,label,vowel,repetition,variant,path";

struct ManifestRow {
  std::string speaker_id;
  VoiceQuality label = VoiceQuality::kModal;
  std::string vowel;
  std::string repetition;
  SourceVariant variant = SourceVariant::kSpeech;
  std::filesystem::path path;
};

// Throws kParse with the offending line number.
std::vector<ManifestRow> ParseManifest(std::string_view text,
                                       const std::filesystem::path& base_dir = {});
std::vector<ManifestRow> ReadManifest(const std::filesystem::path& path);
std::string FormatManifest(std::span<const ManifestRow> rows);
void WriteManifest(const std::filesystem::path& path, std::span<const ManifestRow> rows);

class LabeledDataset {
 public:
  LabeledDataset() = default;
  // Throws kDimensionMismatch (row count or dim disagrees with kind) or
  // kEmptyInput.
  LabeledDataset(std::vector<ManifestRow> records, RowMatrix features, FeatureKind kind);

  std::size_t size() const { return records_.size(); }
  std::size_t dim() const { return static_cast<std::size_t>(features_.cols()); }
  FeatureKind kind() const { return kind_; }
  const std::vector<ManifestRow>& records() const { return records_; }
  const ManifestRow& record(std::size_t i) const { return records_[i]; }
  const RowMatrix& features() const { return features_; }
  std::vector<VoiceQuality> labels() const;

  // Distinct speaker ids in sorted order.
  std::vector<std::string> Speakers() const;
  std::vector<std::size_t> RecordsOf(std::string_view speaker) const;

  RowMatrix Rows(std::span<const std::size_t> indices) const;
  std::vector<VoiceQuality> Labels(std::span<const std::size_t> indices) const;
  LabeledDataset Subset(std::span<const std::size_t> indices) const;

 private:
  std::vector<ManifestRow> records_;
  RowMatrix features_;
  FeatureKind kind_ = FeatureKind::kMel80;
};

std::string FormatFeatureCsv(const LabeledDataset& ds);
LabeledDataset ParseFeatureCsv(std::string_view text);
void WriteFeatureCsv(const std::filesystem::path& path, const LabeledDataset& ds);
LabeledDataset ReadFeatureCsv(const std::filesystem::path& path);

// Text file helpers shared by the report writers.
std::string ReadTextFile(const std::filesystem::path& path);
void WriteTextFile(const std::filesystem::path& path, std::string_view text);

}  // namespace glottalkit

#endif  // GLOTTALKIT_DATASET_HPP_
