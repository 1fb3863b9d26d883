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

// Layer-wise, temporally averaged pre-trained-model embeddings stored in the
// VQEMB1 interchange format:
//
//   bytes 0-5   "VQEMB1"
//   byte  6     model id  (0 wav2vec2-base, 1 wav2vec2-large, 2 hubert-large)
//   byte  7     source variant (0 speech, 1 nsa, 2 speech-qcp, 3 speech-zff,
//                               4 nsa-qcp, 5 nsa-zff)
//   bytes 8-11  n_layers, uint32 little-endian
//   bytes 12-15 dim, uint32 little-endian
//   then n_layers * dim float32 little-endian values, row-major by layer,
//   and nothing else.
//
// Row 0 is the averaged input to the first transformer layer; rows 1..L are
// the averaged outputs of the transformer layers.

#ifndef GLOTTALKIT_EMBEDDINGS_HPP_
#define GLOTTALKIT_EMBEDDINGS_HPP_

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "glottalkit/features.hpp"

namespace glottalkit {

enum class EmbeddingModel : std::uint8_t { kWav2Vec2Base = 0, kWav2Vec2Large = 1, kHubertLarge = 2 };

enum class SourceVariant : std::uint8_t {
  kSpeech = 0,
  kNsa = 1,
  kSpeechQcp = 2,
  kSpeechZff = 3,
  kNsaQcp = 4,
  kNsaZff = 5,
};

std::string_view EmbeddingModelName(EmbeddingModel m);
std::optional<EmbeddingModel> ParseEmbeddingModel(std::string_view name);
std::string_view SourceVariantName(SourceVariant v);
std::optional<SourceVariant> ParseSourceVariant(std::string_view name);

struct ModelShape {
  std::uint32_t n_layers;
  std::uint32_t dim;
};
ModelShape ExpectedShape(EmbeddingModel m);

inline constexpr std::string_view kEmbeddingMagic = "VQEMB1";
inline constexpr std::size_t kEmbeddingHeaderBytes = 16;

class EmbeddingSet {
 public:
  // Throws kLayerDimMismatch when the shape disagrees with the model, or
  // kNonFinite. values is n_layers * dim, row-major.
  EmbeddingSet(EmbeddingModel model, SourceVariant variant, std::uint32_t n_layers,
               std::uint32_t dim, std::vector<float> values);

  EmbeddingModel model() const { return model_; }
  SourceVariant variant() const { return variant_; }
  std::uint32_t n_layers() const { return n_layers_; }
  std::uint32_t dim() const { return dim_; }
  std::span<const float> layer(std::size_t i) const {
    return {values_.data() + i * dim_, dim_};
  }
  const std::vector<float>& values() const { return values_; }

 private:
  EmbeddingModel model_;
  SourceVariant variant_;
  std::uint32_t n_layers_;
  std::uint32_t dim_;
  std::vector<float> values_;
};

EmbeddingSet ParseEmbedding(std::span<const std::uint8_t> bytes);
EmbeddingSet ReadEmbeddingFile(const std::filesystem::path& path);
std::vector<std::uint8_t> EncodeEmbedding(const EmbeddingSet& set);
void WriteEmbeddingFile(const std::filesystem::path& path, const EmbeddingSet& set);

// Copy of one layer, upcast to double. Throws kOutOfRange.
FeatureVector SelectLayer(const EmbeddingSet& set, std::size_t layer_index);

}  // namespace glottalkit

#endif  // GLOTTALKIT_EMBEDDINGS_HPP_
