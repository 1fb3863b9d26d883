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

#ifndef GLOTTALKIT_CLASSIFIER_HPP_
#define GLOTTALKIT_CLASSIFIER_HPP_

#include <optional>
#include <span>
#include <string_view>
#include <variant>
#include <vector>

#include "glottalkit/cnn.hpp"
#include "glottalkit/labels.hpp"
#include "glottalkit/matrix.hpp"
#include "glottalkit/svm.hpp"
#include "glottalkit/zscore.hpp"

namespace glottalkit {

enum class ClassifierKind { kSvm, kCnn };

std::string_view ClassifierKindName(ClassifierKind k);
std::optional<ClassifierKind> ParseClassifierKind(std::string_view name);

struct ClassifierConfig {
  ClassifierKind kind = ClassifierKind::kSvm;
  SvmConfig svm;
  CnnConfig cnn;
};

// A fitted normalizer plus model; Predict takes raw (unnormalized) features.
struct TrainedClassifier {
  ZScoreStats stats;
  std::variant<SvmModel, CnnModel> model;

  ClassifierKind kind() const {
    return std::holds_alternative<SvmModel>(model) ? ClassifierKind::kSvm : ClassifierKind::kCnn;
  }
  VoiceQuality Predict(std::span<const double> raw) const;
  std::vector<VoiceQuality> Predict(const RowMatrix& raw) const;
};

struct TrainingSet {
  RowMatrix x;
  std::vector<VoiceQuality> y;
};

// Fits the z-score on train.x (plus validation rows, which count as training
// data), normalizes, and trains. The CNN requires a non-empty validation set;
// the SVM ignores it.
TrainedClassifier TrainClassifier(const TrainingSet& train, const TrainingSet& validation,
                                  const ClassifierConfig& cfg);

}  // namespace glottalkit

#endif  // GLOTTALKIT_CLASSIFIER_HPP_
