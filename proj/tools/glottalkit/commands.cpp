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

#include "commands.hpp"

#include <cstdio>
#include <map>

#include <fmt/format.h>
#include <json.hpp>

#include "glottalkit/dataset.hpp"
#include "glottalkit/embeddings.hpp"
#include "glottalkit/error.hpp"
#include "glottalkit/evaluation.hpp"
#include "glottalkit/log.hpp"
#include "glottalkit/model_io.hpp"
#include "glottalkit/parallel.hpp"
#include "glottalkit/qcp.hpp"
#include "glottalkit/source.hpp"
#include "glottalkit/wav.hpp"
#include "glottalkit/zff.hpp"

namespace glottalkit::cli {
namespace {

namespace fs = std::filesystem;

void EnsureDir(const fs::path& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  Require(!ec, ErrorCode::kIo, fmt::format("cannot create {}: {}", dir.string(), ec.message()));
}

std::string GciCsv(const GciSequence& g) {
  std::string out = "sample,time_s\n";
  for (auto n : g.instants) out += fmt::format("{},{}\n", n, static_cast<double>(n) / g.fs);
  return out;
}

SourceVariant DerivedVariant(SourceVariant base, SourceMethod m) {
  Require(BaseVariant(base) == base, ErrorCode::kInvalidArgument,
          fmt::format("variant {} is already a glottal source", SourceVariantName(base)));
  if (base == SourceVariant::kSpeech) {
    return m == SourceMethod::kQcp ? SourceVariant::kSpeechQcp : SourceVariant::kSpeechZff;
  }
  return m == SourceMethod::kQcp ? SourceVariant::kNsaQcp : SourceVariant::kNsaZff;
}

int RunInverseFilter(const RunConfig& c, SourceMethod method) {
  std::vector<ManifestRow> rows;
  for (auto& r : ReadManifest(c.manifest)) {
    if (!c.pipeline.variant || r.variant == *c.pipeline.variant) rows.push_back(std::move(r));
  }
  Require(!rows.empty(), ErrorCode::kInvalidArgument, "no manifest rows selected");
  const std::string_view tag = SourceMethodName(method);
  EnsureDir(c.out_dir / "sources");
  EnsureDir(c.out_dir / "gci");

  std::vector<ManifestRow> out_rows(rows.size());
  ParallelFor(rows.size(), c.pipeline.workers, [&](std::size_t i) {
    const ManifestRow& r = rows[i];
    try {
      const Waveform w = LoadWav(r.path, c.pipeline.wav);
      GlottalSource src;
      GciSequence gcis;
      if (method == SourceMethod::kQcp) {
        QcpResult q = AnalyzeQcp(w, c.pipeline.qcp);
        src = std::move(q.source);
        gcis = std::move(q.gcis);
      } else {
        ZffAnalysis z = AnalyzeZff(w, c.pipeline.zff);
        gcis = z.gcis;
        src = ZffGlottalSource(w, c.pipeline.zff);
      }
      const std::string stem = fmt::format("{:04d}_{}", i, r.path.stem().string());
      // Glottal-source amplitudes are unbounded, so keep float samples.
      WriteWav(c.out_dir / "sources" / (stem + ".wav"), src.ToWaveform(), WavEncoding::kFloat32);
      WriteTextFile(c.out_dir / "gci" / (stem + ".csv"), GciCsv(gcis));
      ManifestRow o = r;
      o.variant = DerivedVariant(r.variant, method);
      o.path = fs::path("sources") / (stem + ".wav");
      out_rows[i] = std::move(o);
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("record {} ({}): {}", i, r.path.string(), e.what()));
    }
  });
  WriteManifest(c.out_dir / "manifest.csv", out_rows);
  std::printf("%s: wrote %zu glottal sources to %s\n", std::string(tag).c_str(), out_rows.size(),
              c.out_dir.string().c_str());
  return 0;
}

LabeledDataset LoadDataset(const RunConfig& c) {
  if (!c.features.empty()) return ReadFeatureCsv(c.features);
  Require(!c.manifest.empty(), ErrorCode::kInvalidArgument, "--manifest or --features is required");
  return BuildDataset(ReadManifest(c.manifest), c.pipeline);
}

int RunFeatures(const RunConfig& c) {
  const LabeledDataset ds = BuildDataset(ReadManifest(c.manifest), c.pipeline);
  EnsureDir(c.out_dir);
  const fs::path out = c.out_dir / fmt::format("features_{}.csv", FeatureKindName(ds.kind()));
  WriteFeatureCsv(out, ds);
  std::printf("features: %zu x %zu written to %s\n", ds.size(), ds.dim(), out.string().c_str());
  return 0;
}

int RunEmbedValidate(const RunConfig& c) {
  std::vector<fs::path> files = c.inputs;
  if (!c.manifest.empty()) {
    for (const auto& r : ReadManifest(c.manifest)) files.push_back(r.path);
  }
  Require(!files.empty(), ErrorCode::kInvalidArgument, "no embedding files given");
  std::size_t bad = 0;
  for (const auto& f : files) {
    try {
      const EmbeddingSet s = ReadEmbeddingFile(f);
      std::printf("ok %s %s %s %ux%u\n", f.string().c_str(),
                  std::string(EmbeddingModelName(s.model())).c_str(),
                  std::string(SourceVariantName(s.variant())).c_str(), s.n_layers(), s.dim());
    } catch (const Error& e) {
      ++bad;
      std::printf("invalid [%s] %s\n", ErrorCodeName(e.code()), e.what());
    }
  }
  if (bad > 0) {
    std::fprintf(stderr, "glottalkit: error: %zu of %zu embedding files invalid\n", bad, files.size());
    return 1;
  }
  return 0;
}

int RunSynth(const RunConfig& c) {
  const auto items = GenerateCorpus(c.corpus);
  const WavEncoding enc = c.encoding == "float32" ? WavEncoding::kFloat32 : WavEncoding::kPcm16;
  std::vector<ManifestRow> rows;
  std::string onsets = "path,onset_samples\n";
  std::string closures = "path,closure_samples\n";
  for (const auto& it : items) {
    EnsureDir((c.out_dir / it.row.path).parent_path());
    WriteWav(c.out_dir / it.row.path, it.synth.wave, enc);
    rows.push_back(it.row);
    onsets += it.row.path.generic_string();
    for (auto n : it.synth.onsets) onsets += fmt::format(",{}", n);
    onsets += '\n';
    closures += it.row.path.generic_string();
    for (auto n : it.synth.closures) closures += fmt::format(",{}", n);
    closures += '\n';
  }
  WriteManifest(c.out_dir / "manifest.csv", rows);
  WriteTextFile(c.out_dir / "gci_onsets.csv", onsets);
  WriteTextFile(c.out_dir / "gci_closures.csv", closures);
  std::printf("synth: wrote %zu utterances to %s\n", rows.size(), c.out_dir.string().c_str());
  return 0;
}

int RunTrain(const RunConfig& c) {
  const LabeledDataset ds = LoadDataset(c);
  std::vector<std::size_t> train, val;
  if (c.model_cfg.kind == ClassifierKind::kCnn) {
    // Same rule as LOSO: the first speaker in sorted order validates.
    const auto speakers = ds.Speakers();
    Require(speakers.size() >= 2, ErrorCode::kInvalidArgument,
            "CNN training needs at least two speakers");
    for (std::size_t i = 0; i < ds.size(); ++i) {
      (ds.record(i).speaker_id == speakers.front() ? val : train).push_back(i);
    }
  } else {
    for (std::size_t i = 0; i < ds.size(); ++i) train.push_back(i);
  }
  const TrainedClassifier model =
      TrainClassifier({ds.Rows(train), ds.Labels(train)}, {ds.Rows(val), ds.Labels(val)}, c.model_cfg);
  EnsureDir(c.out_dir);
  SaveClassifier(c.out_dir / "model.vqmdl", model);
  std::printf("train: %s on %zu records (dim %zu) -> %s\n",
              std::string(ClassifierKindName(c.model_cfg.kind)).c_str(), ds.size(), ds.dim(),
              (c.out_dir / "model.vqmdl").string().c_str());
  return 0;
}

std::string ConfusionJson(const ConfusionMatrix& m, double accuracy, std::size_t n) {
  nlohmann::ordered_json j;
  j["records"] = n;
  j["accuracy"] = accuracy;
  auto labels = nlohmann::ordered_json::array();
  for (auto q : kAllQualities) labels.push_back(std::string(QualityName(q)));
  j["confusion"]["labels"] = labels;
  j["confusion"]["matrix"] = m;
  return j.dump(2) + "\n";
}

int RunEvaluate(const RunConfig& c) {
  const TrainedClassifier model = LoadClassifier(c.model);
  const LabeledDataset ds = LoadDataset(c);
  const auto pred = model.Predict(ds.features());
  const auto truth = ds.labels();
  const auto m = Confusion(truth, pred);
  EnsureDir(c.out_dir);
  std::string csv = "record,speaker_id,path,truth,prediction\n";
  for (std::size_t i = 0; i < ds.size(); ++i) {
    csv += fmt::format("{},{},{},{},{}\n", i, ds.record(i).speaker_id,
                       ds.record(i).path.generic_string(), QualityName(truth[i]),
                       QualityName(pred[i]));
  }
  WriteTextFile(c.out_dir / "predictions.csv", csv);
  WriteTextFile(c.out_dir / "evaluation.json", ConfusionJson(m, Accuracy(m), ds.size()));
  std::printf("evaluate: accuracy %.4f on %zu records\n", Accuracy(m), ds.size());
  return 0;
}

std::vector<std::pair<std::string, std::string>> Meta(const RunConfig& c, const LabeledDataset& ds) {
  return {{"classifier", std::string(ClassifierKindName(c.model_cfg.kind))},
          {"feature", std::string(FeatureKindName(ds.kind()))},
          {"variant", std::string(SourceVariantName(ds.record(0).variant))},
          {"seed", std::to_string(c.seed)}};
}

int RunLoso(const RunConfig& c) {
  const LabeledDataset ds = LoadDataset(c);
  const LosoResult r = LosoCrossValidate(ds, {c.model_cfg, c.pipeline.workers});
  EnsureDir(c.out_dir);
  WriteTextFile(c.out_dir / "folds.csv", FoldReportCsv(r));
  WriteTextFile(c.out_dir / "predictions.csv", PredictionsCsv(r, ds));
  const auto meta = Meta(c, ds);
  WriteTextFile(c.out_dir / "summary.json", SummaryJson(r, meta));
  std::printf("loso: %zu folds, accuracy %.4f +- %.4f\n", r.summary.n_folds,
              r.summary.mean_accuracy, r.summary.std_accuracy);
  return 0;
}

int RunLayerSweep(const RunConfig& c) {
  const auto resolved = ResolveRows(ReadManifest(c.manifest), c.pipeline.variant);
  std::vector<std::optional<EmbeddingSet>> sets(resolved.size());
  ParallelFor(resolved.size(), c.pipeline.workers, [&](std::size_t i) {
    Require(!resolved[i].derive, ErrorCode::kInvalidArgument,
            "layer-sweep needs VQEMB1 files for the requested variant");
    try {
      sets[i] = ReadEmbeddingFile(resolved[i].row.path);
    } catch (const Error& e) {
      throw Error(e.code(), fmt::format("record {} ({}): {}", i, resolved[i].row.path.string(),
                                        e.what()));
    }
  });
  const std::uint32_t n_layers = sets.front()->n_layers();
  const std::uint32_t dim = sets.front()->dim();
  std::vector<ManifestRow> records;
  for (std::size_t i = 0; i < resolved.size(); ++i) {
    Require(sets[i]->n_layers() == n_layers && sets[i]->dim() == dim &&
                sets[i]->model() == sets.front()->model(),
            ErrorCode::kLayerDimMismatch,
            fmt::format("record {} ({}): embedding model differs from the first record", i,
                        resolved[i].row.path.string()));
    records.push_back(resolved[i].row);
  }

  EnsureDir(c.out_dir);
  std::string table = "layer,mean_accuracy,std_accuracy,folds\n";
  for (std::uint32_t layer = 0; layer < n_layers; ++layer) {
    RowMatrix x(static_cast<Eigen::Index>(sets.size()), static_cast<Eigen::Index>(dim));
    for (std::size_t i = 0; i < sets.size(); ++i) {
      const auto v = sets[i]->layer(layer);
      for (std::uint32_t j = 0; j < dim; ++j) {
        x(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = v[j];
      }
    }
    const LabeledDataset ds(records, std::move(x), FeatureKind::kEmbedding);
    const LosoResult r = LosoCrossValidate(ds, {c.model_cfg, c.pipeline.workers});
    table += fmt::format("{},{},{},{}\n", layer, r.summary.mean_accuracy, r.summary.std_accuracy,
                         r.summary.n_folds);
    Log(LogLevel::kInfo, fmt::format("layer {}: {:.4f}", layer, r.summary.mean_accuracy));
  }
  WriteTextFile(c.out_dir / "layer_sweep.csv", table);
  std::printf("layer-sweep: %u layers written to %s\n", n_layers,
              (c.out_dir / "layer_sweep.csv").string().c_str());
  return 0;
}

}  // namespace

int Dispatch(const RunConfig& c) {
  const std::string& s = c.subcommand;
  if (s == "zff") return RunInverseFilter(c, SourceMethod::kZff);
  if (s == "qcp") return RunInverseFilter(c, SourceMethod::kQcp);
  if (s == "features") return RunFeatures(c);
  if (s == "embed-validate") return RunEmbedValidate(c);
  if (s == "synth") return RunSynth(c);
  if (s == "train") return RunTrain(c);
  if (s == "evaluate") return RunEvaluate(c);
  if (s == "loso") return RunLoso(c);
  if (s == "layer-sweep") return RunLayerSweep(c);
  throw Error(ErrorCode::kInvalidArgument, fmt::format("unknown subcommand '{}'", s));
}

}  // namespace glottalkit::cli
