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

#include "glottalkit/embeddings.hpp"

#include <algorithm>
#include <array>
#include <cmath>

#include <fmt/format.h>

#include "glottalkit/binary_io.hpp"
#include "glottalkit/error.hpp"

namespace glottalkit {
namespace {

constexpr std::array<std::string_view, 3> kModelNames = {"wav2vec2-base", "wav2vec2-large",
                                                         "hubert-large"};
constexpr std::array<std::string_view, 6> kVariantNames = {
    "speech", "nsa", "speech-qcp", "speech-zff", "nsa-qcp", "nsa-zff"};

}  // namespace

std::string_view EmbeddingModelName(EmbeddingModel m) {
  return kModelNames.at(static_cast<std::size_t>(m));
}

std::optional<EmbeddingModel> ParseEmbeddingModel(std::string_view name) {
  for (std::size_t i = 0; i < kModelNames.size(); ++i) {
    if (kModelNames[i] == name) return static_cast<EmbeddingModel>(i);
  }
  return std::nullopt;
}

std::string_view SourceVariantName(SourceVariant v) {
  return kVariantNames.at(static_cast<std::size_t>(v));
}

std::optional<SourceVariant> ParseSourceVariant(std::string_view name) {
  for (std::size_t i = 0; i < kVariantNames.size(); ++i) {
    if (kVariantNames[i] == name) return static_cast<SourceVariant>(i);
  }
  return std::nullopt;
}

ModelShape ExpectedShape(EmbeddingModel m) {
  return m == EmbeddingModel::kWav2Vec2Base ? ModelShape{13, 768} : ModelShape{25, 1024};
}

EmbeddingSet::EmbeddingSet(EmbeddingModel model, SourceVariant variant, std::uint32_t n_layers,
                           std::uint32_t dim, std::vector<float> values)
    : model_(model), variant_(variant), n_layers_(n_layers), dim_(dim), values_(std::move(values)) {
  const ModelShape want = ExpectedShape(model_);
  Require(n_layers_ == want.n_layers && dim_ == want.dim, ErrorCode::kLayerDimMismatch,
          fmt::format("layer/dim mismatch: {} requires {}x{}, got {}x{}", EmbeddingModelName(model_),
                      want.n_layers, want.dim, n_layers_, dim_));
  Require(values_.size() == static_cast<std::size_t>(n_layers_) * dim_, ErrorCode::kTruncated,
          fmt::format("embedding holds {} values, expected {}", values_.size(),
                      static_cast<std::size_t>(n_layers_) * dim_));
  for (std::size_t i = 0; i < values_.size(); ++i) {
    Require(std::isfinite(values_[i]), ErrorCode::kNonFinite,
            fmt::format("non-finite embedding value at layer {}, index {}", i / dim_, i % dim_));
  }
}

EmbeddingSet ParseEmbedding(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  Require(r.CanRead(kEmbeddingHeaderBytes), ErrorCode::kTruncated,
          fmt::format("truncated header: {} bytes", bytes.size()));
  const auto magic = r.Take(kEmbeddingMagic.size());
  Require(std::equal(magic.begin(), magic.end(), kEmbeddingMagic.begin()), ErrorCode::kBadMagic,
          "bad magic: not a VQEMB1 file");
  const auto model_byte = r.Get<std::uint8_t>();
  const auto variant_byte = r.Get<std::uint8_t>();
  Require(model_byte < kModelNames.size(), ErrorCode::kParse,
          fmt::format("unknown model id {}", model_byte));
  Require(variant_byte < kVariantNames.size(), ErrorCode::kParse,
          fmt::format("unknown source variant {}", variant_byte));
  const auto n_layers = r.Get<std::uint32_t>();
  const auto dim = r.Get<std::uint32_t>();
  const auto model = static_cast<EmbeddingModel>(model_byte);
  const ModelShape want = ExpectedShape(model);
  Require(n_layers == want.n_layers && dim == want.dim, ErrorCode::kLayerDimMismatch,
          fmt::format("layer/dim mismatch: {} requires {}x{}, header declares {}x{}",
                      EmbeddingModelName(model), want.n_layers, want.dim, n_layers, dim));

  const std::size_t payload = static_cast<std::size_t>(n_layers) * dim * sizeof(float);
  Require(r.remaining() >= payload, ErrorCode::kTruncated,
          fmt::format("truncated payload: {} bytes, header implies {}", r.remaining(), payload));
  Require(r.remaining() == payload, ErrorCode::kTruncated,
          fmt::format("payload has {} trailing bytes", r.remaining() - payload));
  std::vector<float> values(static_cast<std::size_t>(n_layers) * dim);
  for (float& v : values) v = r.Get<float>();
  return EmbeddingSet(model, static_cast<SourceVariant>(variant_byte), n_layers, dim,
                      std::move(values));
}

EmbeddingSet ReadEmbeddingFile(const std::filesystem::path& path) {
  const auto bytes = ReadFileBytes(path);
  try {
    return ParseEmbedding(bytes);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::vector<std::uint8_t> EncodeEmbedding(const EmbeddingSet& set) {
  ByteWriter w;
  w.PutString(std::string(kEmbeddingMagic));
  w.Put<std::uint8_t>(static_cast<std::uint8_t>(set.model()));
  w.Put<std::uint8_t>(static_cast<std::uint8_t>(set.variant()));
  w.Put<std::uint32_t>(set.n_layers());
  w.Put<std::uint32_t>(set.dim());
  for (float v : set.values()) w.Put<float>(v);
  return std::move(w.bytes());
}

void WriteEmbeddingFile(const std::filesystem::path& path, const EmbeddingSet& set) {
  WriteFileBytes(path, EncodeEmbedding(set));
}

FeatureVector SelectLayer(const EmbeddingSet& set, std::size_t layer_index) {
  Require(layer_index < set.n_layers(), ErrorCode::kOutOfRange,
          fmt::format("layer index {} out of range [0, {})", layer_index, set.n_layers()));
  const auto row = set.layer(layer_index);
  return FeatureVector(std::vector<double>(row.begin(), row.end()), FeatureKind::kEmbedding);
}

}  // namespace glottalkit
