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

#include "glottalkit/classifier.hpp"

#include <fmt/format.h>

#include "glottalkit/error.hpp"

namespace glottalkit {

std::string_view ClassifierKindName(ClassifierKind k) {
  return k == ClassifierKind::kSvm ? "svm" : "cnn";
}

std::optional<ClassifierKind> ParseClassifierKind(std::string_view name) {
  if (name == "svm") return ClassifierKind::kSvm;
  if (name == "cnn") return ClassifierKind::kCnn;
  return std::nullopt;
}

VoiceQuality TrainedClassifier::Predict(std::span<const double> raw) const {
  const auto z = stats.Apply(raw);
  return std::visit([&](const auto& m) { return m.Predict(z); }, model);
}

std::vector<VoiceQuality> TrainedClassifier::Predict(const RowMatrix& raw) const {
  std::vector<VoiceQuality> out;
  out.reserve(static_cast<std::size_t>(raw.rows()));
  if (const auto* cnn = std::get_if<CnnModel>(&model)) {
    // Batched inference; BN uses running statistics so rows are independent.
    const RowMatrix p = cnn->Probabilities(stats.Apply(raw));
    for (Eigen::Index i = 0; i < p.rows(); ++i) {
      Eigen::Index best = 0;
      for (Eigen::Index c = 1; c < p.cols(); ++c) {
        if (p(i, c) > p(i, best)) best = c;
      }
      out.push_back(static_cast<VoiceQuality>(best));
    }
    return out;
  }
  for (Eigen::Index i = 0; i < raw.rows(); ++i) out.push_back(Predict(Row(raw, i)));
  return out;
}

TrainedClassifier TrainClassifier(const TrainingSet& train, const TrainingSet& validation,
                                  const ClassifierConfig& cfg) {
  Require(train.x.rows() == static_cast<Eigen::Index>(train.y.size()),
          ErrorCode::kDimensionMismatch, "training features and labels differ in length");
  Require(validation.x.rows() == static_cast<Eigen::Index>(validation.y.size()),
          ErrorCode::kDimensionMismatch, "validation features and labels differ in length");

  RowMatrix all(train.x.rows() + validation.x.rows(), train.x.cols());
  all.topRows(train.x.rows()) = train.x;
  if (validation.x.rows() > 0) {
    Require(validation.x.cols() == train.x.cols(), ErrorCode::kDimensionMismatch,
            "validation features differ in dimension");
    all.bottomRows(validation.x.rows()) = validation.x;
  }

  TrainedClassifier out;
  out.stats = ZScoreStats::Fit(all);
  if (cfg.kind == ClassifierKind::kSvm) {
    std::vector<VoiceQuality> y = train.y;
    y.insert(y.end(), validation.y.begin(), validation.y.end());
    out.model = TrainSvm(out.stats.Apply(all), y, cfg.svm);
  } else {
    out.model = TrainCnn(out.stats.Apply(train.x), train.y, out.stats.Apply(validation.x),
                         validation.y, cfg.cnn)
                    .model;
  }
  return out;
}

}  // namespace glottalkit
