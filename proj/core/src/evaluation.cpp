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

#include "glottalkit/evaluation.hpp"

#include <cmath>

#include <fmt/format.h>
#include <json.hpp>

#include "glottalkit/error.hpp"
#include "glottalkit/parallel.hpp"

namespace glottalkit {

ConfusionMatrix Confusion(std::span<const VoiceQuality> truth,
                          std::span<const VoiceQuality> predictions) {
  Require(truth.size() == predictions.size(), ErrorCode::kDimensionMismatch,
          fmt::format("confusion: {} labels vs {} predictions", truth.size(), predictions.size()));
  Require(!truth.empty(), ErrorCode::kEmptyInput, "confusion: no labels");
  ConfusionMatrix m{};
  for (std::size_t i = 0; i < truth.size(); ++i) ++m[Index(truth[i])][Index(predictions[i])];
  return m;
}

std::size_t Total(const ConfusionMatrix& m) {
  std::size_t n = 0;
  for (const auto& row : m) {
    for (auto c : row) n += c;
  }
  return n;
}

double Accuracy(const ConfusionMatrix& m) {
  const std::size_t n = Total(m);
  Require(n > 0, ErrorCode::kEmptyInput, "accuracy of an empty confusion matrix");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < kNumQualities; ++i) hits += m[i][i];
  return static_cast<double>(hits) / static_cast<double>(n);
}

FoldPlan PlanFold(const LabeledDataset& ds, const std::string& test_speaker,
                  ClassifierKind classifier) {
  FoldPlan plan;
  plan.test_speaker = test_speaker;
  if (classifier == ClassifierKind::kCnn) {
    for (const auto& s : ds.Speakers()) {
      if (s != test_speaker) {
        plan.validation_speaker = s;
        break;
      }
    }
    Require(plan.validation_speaker.has_value(), ErrorCode::kInvalidArgument,
            "CNN fold needs a validation speaker");
  }
  for (std::size_t i = 0; i < ds.size(); ++i) {
    const auto& id = ds.record(i).speaker_id;
    if (id == test_speaker) {
      plan.test.push_back(i);
    } else if (plan.validation_speaker && id == *plan.validation_speaker) {
      plan.validation.push_back(i);
    } else {
      plan.train.push_back(i);
    }
  }
  Require(!plan.train.empty(), ErrorCode::kInvalidArgument,
          fmt::format("fold {} has no training records", test_speaker));
  return plan;
}

std::vector<FoldPlan> PlanFolds(const LabeledDataset& ds, ClassifierKind classifier) {
  const auto speakers = ds.Speakers();
  const std::size_t needed = classifier == ClassifierKind::kCnn ? 3 : 2;
  Require(speakers.size() >= needed, ErrorCode::kInvalidArgument,
          fmt::format("LOSO with {} needs at least {} speakers (got {})",
                      ClassifierKindName(classifier), needed, speakers.size()));
  std::vector<FoldPlan> plans;
  for (const auto& s : speakers) plans.push_back(PlanFold(ds, s, classifier));
  return plans;
}

TrainedClassifier TrainFold(const LabeledDataset& ds, const FoldPlan& plan,
                            const ClassifierConfig& cfg) {
  const TrainingSet train{ds.Rows(plan.train), ds.Labels(plan.train)};
  const TrainingSet val{ds.Rows(plan.validation), ds.Labels(plan.validation)};
  return TrainClassifier(train, val, cfg);
}

EvalSummary Summarize(std::span<const FoldReport> folds) {
  Require(!folds.empty(), ErrorCode::kEmptyInput, "no folds to summarize");
  EvalSummary s;
  s.n_folds = folds.size();
  double sum = 0.0;
  for (const auto& f : folds) {
    sum += f.accuracy;
    for (std::size_t i = 0; i < kNumQualities; ++i) {
      for (std::size_t j = 0; j < kNumQualities; ++j) s.pooled[i][j] += f.confusion[i][j];
    }
  }
  const auto n = static_cast<double>(folds.size());
  s.mean_accuracy = sum / n;
  double ss = 0.0;
  for (const auto& f : folds) ss += (f.accuracy - s.mean_accuracy) * (f.accuracy - s.mean_accuracy);
  s.std_accuracy = std::sqrt(ss / n);
  return s;
}

LosoResult LosoCrossValidate(const LabeledDataset& ds, const EvaluationConfig& cfg) {
  const auto plans = PlanFolds(ds, cfg.classifier.kind);
  LosoResult result;
  result.folds.resize(plans.size());
  ParallelFor(plans.size(), cfg.workers, [&](std::size_t k) {
    const FoldPlan& plan = plans[k];
    try {
      const TrainedClassifier model = TrainFold(ds, plan, cfg.classifier);
      FoldReport& rep = result.folds[k];
      rep.fold = k;
      rep.test_speaker = plan.test_speaker;
      rep.validation_speaker = plan.validation_speaker;
      rep.test_records = plan.test;
      rep.truth = ds.Labels(plan.test);
      rep.predictions = model.Predict(ds.Rows(plan.test));
      rep.confusion = Confusion(rep.truth, rep.predictions);
      rep.accuracy = Accuracy(rep.confusion);
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("fold {} (test speaker {}): {}", k, plan.test_speaker,
                                        e.what()));
    }
  });
  result.summary = Summarize(result.folds);
  return result;
}

std::string FoldReportCsv(const LosoResult& r) {
  std::string out = "fold,test_speaker,validation_speaker,n_test,accuracy";
  for (auto t : kAllQualities) {
    for (auto p : kAllQualities) out += fmt::format(",{}_as_{}", QualityName(t), QualityName(p));
  }
  out += '\n';
  for (const auto& f : r.folds) {
    out += fmt::format("{},{},{},{},{}", f.fold, f.test_speaker, f.validation_speaker.value_or(""),
                       f.test_records.size(), f.accuracy);
    for (const auto& row : f.confusion) {
      for (auto c : row) out += fmt::format(",{}", c);
    }
    out += '\n';
  }
  return out;
}

std::string PredictionsCsv(const LosoResult& r, const LabeledDataset& ds) {
  std::string out = "fold,test_speaker,record,path,truth,prediction\n";
  for (const auto& f : r.folds) {
    for (std::size_t k = 0; k < f.test_records.size(); ++k) {
      const auto i = f.test_records[k];
      out += fmt::format("{},{},{},{},{},{}\n", f.fold, f.test_speaker, i,
                         ds.record(i).path.generic_string(), QualityName(f.truth[k]),
                         QualityName(f.predictions[k]));
    }
  }
  return out;
}

std::string SummaryJson(const LosoResult& r,
                        std::span<const std::pair<std::string, std::string>> meta) {
  nlohmann::ordered_json j;
  for (const auto& [k, v] : meta) j[k] = v;
  j["folds"] = r.summary.n_folds;
  j["mean_accuracy"] = r.summary.mean_accuracy;
  j["std_accuracy"] = r.summary.std_accuracy;
  auto labels = nlohmann::ordered_json::array();
  for (auto q : kAllQualities) labels.push_back(std::string(QualityName(q)));
  j["confusion"]["labels"] = labels;
  j["confusion"]["matrix"] = r.summary.pooled;
  auto per_fold = nlohmann::ordered_json::array();
  for (const auto& f : r.folds) {
    per_fold.push_back({{"test_speaker", f.test_speaker}, {"accuracy", f.accuracy},
                        {"n_test", f.test_records.size()}});
  }
  j["fold_accuracies"] = per_fold;
  return j.dump(2) + "\n";
}

}  // namespace glottalkit
