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

#include "glottalkit/model_io.hpp"

#include <cmath>
#include <string>

#include <fmt/format.h>

#include "glottalkit/binary_io.hpp"
#include "glottalkit/error.hpp"

namespace glottalkit {
namespace {

constexpr std::uint8_t kKindSvm = 1;
constexpr std::uint8_t kKindCnn = 2;

using Block = std::vector<double>;

void PutBlock(ByteWriter& w, std::span<const double> values) {
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(values.size()));
  for (double v : values) w.Put<double>(v);
}

std::vector<Block> ReadBlocks(ByteReader& r) {
  Require(r.CanRead(4), ErrorCode::kTruncated, "model file truncated before block count");
  const auto n = r.Get<std::uint32_t>();
  std::vector<Block> blocks;
  for (std::uint32_t b = 0; b < n; ++b) {
    Require(r.CanRead(4), ErrorCode::kTruncated, fmt::format("model block {} truncated", b));
    const auto len = r.Get<std::uint32_t>();
    Require(r.remaining() / 8 >= len, ErrorCode::kTruncated,
            fmt::format("model block {} truncated", b));
    Block block(len);
    for (auto& v : block) v = r.Get<double>();
    blocks.push_back(std::move(block));
  }
  Require(r.remaining() == 0, ErrorCode::kTruncated, "trailing bytes after model blocks");
  return blocks;
}

std::size_t AsCount(double v, const char* what) {
  Require(std::isfinite(v) && v >= 0.0 && v == std::floor(v) && v < 1e12, ErrorCode::kParse,
          fmt::format("model field {} is not a count", what));
  return static_cast<std::size_t>(v);
}

VoiceQuality AsQuality(double v) {
  const std::size_t i = AsCount(v, "class");
  Require(i < kNumQualities, ErrorCode::kParse, "model class id out of range");
  return static_cast<VoiceQuality>(i);
}

class BlockCursor {
 public:
  explicit BlockCursor(std::vector<Block> blocks) : blocks_(std::move(blocks)) {}
  const Block& Next() {
    Require(next_ < blocks_.size(), ErrorCode::kTruncated, "model file has too few blocks");
    return blocks_[next_++];
  }
  bool done() const { return next_ == blocks_.size(); }

 private:
  std::vector<Block> blocks_;
  std::size_t next_ = 0;
};

void EncodeSvm(const SvmModel& m, std::vector<Block>& blocks) {
  Block header = {m.gamma, static_cast<double>(m.dim), static_cast<double>(m.classes.size())};
  for (auto q : m.classes) header.push_back(static_cast<double>(Index(q)));
  header.push_back(static_cast<double>(m.machines.size()));
  blocks.push_back(std::move(header));
  for (const auto& b : m.machines) {
    blocks.push_back({static_cast<double>(Index(b.positive)), static_cast<double>(Index(b.negative)),
                      b.bias, static_cast<double>(b.support_vectors.rows())});
    blocks.emplace_back(b.support_vectors.data(),
                        b.support_vectors.data() + b.support_vectors.size());
    blocks.emplace_back(b.coef.data(), b.coef.data() + b.coef.size());
  }
}

SvmModel DecodeSvm(BlockCursor& cur) {
  const Block& h = cur.Next();
  Require(h.size() >= 4, ErrorCode::kParse, "SVM header block too short");
  SvmModel m;
  m.gamma = h[0];
  m.dim = AsCount(h[1], "dim");
  const std::size_t n_classes = AsCount(h[2], "n_classes");
  Require(h.size() == 4 + n_classes, ErrorCode::kParse, "SVM header block size mismatch");
  for (std::size_t i = 0; i < n_classes; ++i) m.classes.push_back(AsQuality(h[3 + i]));
  const std::size_t n_machines = AsCount(h[3 + n_classes], "n_machines");
  for (std::size_t k = 0; k < n_machines; ++k) {
    const Block& mh = cur.Next();
    Require(mh.size() == 4, ErrorCode::kParse, "SVM machine header size mismatch");
    BinarySvm b;
    b.positive = AsQuality(mh[0]);
    b.negative = AsQuality(mh[1]);
    b.bias = mh[2];
    const std::size_t n_sv = AsCount(mh[3], "n_sv");
    const Block& sv = cur.Next();
    const Block& coef = cur.Next();
    Require(sv.size() == n_sv * m.dim && coef.size() == n_sv, ErrorCode::kDimensionMismatch,
            "SVM support vector block size mismatch");
    b.support_vectors = Eigen::Map<const RowMatrix>(sv.data(), static_cast<Eigen::Index>(n_sv),
                                                    static_cast<Eigen::Index>(m.dim));
    b.coef = Eigen::Map<const Eigen::VectorXd>(coef.data(), static_cast<Eigen::Index>(n_sv));
    m.machines.push_back(std::move(b));
  }
  return m;
}

void EncodeCnn(const CnnModel& m, std::vector<Block>& blocks) {
  const auto& l = m.layout();
  blocks.push_back({static_cast<double>(l.input_dim), static_cast<double>(l.channels[1]),
                    static_cast<double>(l.channels[2]), static_cast<double>(l.channels[3]),
                    static_cast<double>(l.hidden), m.bn_epsilon(), static_cast<double>(l.kernel)});
  blocks.push_back(m.parameters());
  blocks.push_back(m.running_stats());
}

CnnModel DecodeCnn(BlockCursor& cur) {
  const Block& h = cur.Next();
  Require(h.size() == 7, ErrorCode::kParse, "CNN header block size mismatch");
  CnnConfig cfg;
  const std::size_t input_dim = AsCount(h[0], "input_dim");
  for (std::size_t i = 0; i < 3; ++i) cfg.filters[i] = AsCount(h[1 + i], "filters");
  cfg.hidden = AsCount(h[4], "hidden");
  cfg.bn_epsilon = h[5];
  cfg.kernel = AsCount(h[6], "kernel");
  Block params = cur.Next();
  Block running = cur.Next();
  return CnnModel::FromParts(input_dim, cfg, std::move(params), std::move(running));
}

}  // namespace

std::vector<std::uint8_t> EncodeClassifier(const TrainedClassifier& c) {
  std::vector<Block> blocks = {c.stats.mean, c.stats.std};
  std::uint8_t kind = kKindSvm;
  if (const auto* svm = std::get_if<SvmModel>(&c.model)) {
    EncodeSvm(*svm, blocks);
  } else {
    kind = kKindCnn;
    EncodeCnn(std::get<CnnModel>(c.model), blocks);
  }
  ByteWriter w;
  w.PutString(std::string(kModelMagic));
  w.Put<std::uint8_t>(kind);
  w.Put<std::uint32_t>(static_cast<std::uint32_t>(blocks.size()));
  for (const auto& b : blocks) PutBlock(w, b);
  return std::move(w.bytes());
}

TrainedClassifier DecodeClassifier(std::span<const std::uint8_t> bytes) {
  ByteReader r(bytes);
  Require(r.CanRead(kModelMagic.size() + 1), ErrorCode::kTruncated, "model file too short");
  const auto magic = r.Take(kModelMagic.size());
  Require(std::string_view(reinterpret_cast<const char*>(magic.data()), magic.size()) == kModelMagic,
          ErrorCode::kBadMagic, "not a VQMDL1 model file");
  const auto kind = r.Get<std::uint8_t>();
  Require(kind == kKindSvm || kind == kKindCnn, ErrorCode::kParse,
          fmt::format("unknown model kind {}", kind));
  BlockCursor cur(ReadBlocks(r));
  TrainedClassifier c;
  c.stats.mean = cur.Next();
  c.stats.std = cur.Next();
  Require(c.stats.mean.size() == c.stats.std.size(), ErrorCode::kDimensionMismatch,
          "z-score mean and deviation differ in length");
  if (kind == kKindSvm) {
    c.model = DecodeSvm(cur);
  } else {
    c.model = DecodeCnn(cur);
  }
  Require(cur.done(), ErrorCode::kParse, "model file has unexpected extra blocks");
  return c;
}

void SaveClassifier(const std::filesystem::path& path, const TrainedClassifier& c) {
  WriteFileBytes(path, EncodeClassifier(c));
}

TrainedClassifier LoadClassifier(const std::filesystem::path& path) {
  return DecodeClassifier(ReadFileBytes(path));
}

}  // namespace glottalkit
