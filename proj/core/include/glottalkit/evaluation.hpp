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

// Leave-one-speaker-out cross-validation and its reports.

#ifndef GLOTTALKIT_EVALUATION_HPP_
#define GLOTTALKIT_EVALUATION_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "glottalkit/classifier.hpp"
#include "glottalkit/dataset.hpp"
#include "glottalkit/labels.hpp"

namespace glottalkit {

// Rows are truth, columns prediction, both in kAllQualities order.
using ConfusionMatrix = std::array<std::array<std::size_t, kNumQualities>, kNumQualities>;

// Throws kDimensionMismatch (length mismatch) or kEmptyInput.
ConfusionMatrix Confusion(std::span<const VoiceQuality> truth,
                          std::span<const VoiceQuality> predictions);
double Accuracy(const ConfusionMatrix& m);
std::size_t Total(const ConfusionMatrix& m);

struct FoldPlan {
  std::string test_speaker;
  std::optional<std::string> validation_speaker;  // CNN only
  std::vector<std::size_t> train;
  std::vector<std::size_t> validation;
  std::vector<std::size_t> test;
};

// The CNN's validation speaker is the first non-test speaker in sorted order.
// test_speaker need not be present in ds (used by the leakage audit).
FoldPlan PlanFold(const LabeledDataset& ds, const std::string& test_speaker,
                  ClassifierKind classifier);
// One plan per speaker in sorted order. Throws kInvalidArgument with fewer
// than two speakers (three for the CNN).
std::vector<FoldPlan> PlanFolds(const LabeledDataset& ds, ClassifierKind classifier);

// Sees only the plan's train and validation rows.
TrainedClassifier TrainFold(const LabeledDataset& ds, const FoldPlan& plan,
                            const ClassifierConfig& cfg);

struct FoldReport {
  std::size_t fold = 0;
  std::string test_speaker;
  std::optional<std::string> validation_speaker;
  std::vector<std::size_t> test_records;
  std::vector<VoiceQuality> truth;
  std::vector<VoiceQuality> predictions;
  double accuracy = 0.0;
  ConfusionMatrix confusion{};
};

struct EvalSummary {
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;  // population deviation across folds
  ConfusionMatrix pooled{};
  std::size_t n_folds = 0;
};

EvalSummary Summarize(std::span<const FoldReport> folds);

struct EvaluationConfig {
  ClassifierConfig classifier;
  std::size_t workers = 1;
};

struct LosoResult {
  std::vector<FoldReport> folds;
  EvalSummary summary;
};

// Folds run concurrently on cfg.workers threads; the result does not depend
// on the worker count. Classifier errors are rethrown with the fold attached.
LosoResult LosoCrossValidate(const LabeledDataset& ds, const EvaluationConfig& cfg);

// fold,test_speaker,validation_speaker,n_test,accuracy,<9 confusion cells>
std::string FoldReportCsv(const LosoResult& r);
// fold,test_speaker,record,path,truth,prediction
std::string PredictionsCsv(const LosoResult& r, const LabeledDataset& ds);
// Summary with fold accuracies and pooled confusion; meta entries are copied
// into the top-level object as strings.
std::string SummaryJson(const LosoResult& r,
                        std::span<const std::pair<std::string, std::string>> meta = {});

}  // namespace glottalkit

#endif  // GLOTTALKIT_EVALUATION_HPP_
