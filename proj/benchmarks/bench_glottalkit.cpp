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

#include <cstdint>
#include <vector>

#include <benchmark/benchmark.h>

#include "glottalkit/cnn.hpp"
#include "glottalkit/qcp.hpp"
#include "glottalkit/source.hpp"
#include "glottalkit/spectral.hpp"
#include "glottalkit/svm.hpp"
#include "glottalkit/synth.hpp"
#include "glottalkit/zff.hpp"

namespace gk = glottalkit;

namespace {

gk::Waveform Vowel(double seconds) {
  auto p = gk::MakePreset(gk::VoiceQuality::kModal, gk::Vowel::kA);
  p.duration_s = seconds;
  return gk::SynthesizeVowel(p, 16000.0, 1).wave;
}

gk::RowMatrix Rows(std::size_t n, std::size_t d, std::uint64_t seed) {
  std::uint64_t s = seed;
  gk::RowMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < x.size(); ++i) {
    s = s * 6364136223846793005ULL + 1442695040888963407ULL;
    x.data()[i] = static_cast<double>(s >> 11) * 0x1.0p-53 - 0.5;
  }
  return x;
}

std::vector<gk::VoiceQuality> Labels(std::size_t n) {
  std::vector<gk::VoiceQuality> y;
  for (std::size_t i = 0; i < n; ++i) y.push_back(gk::kAllQualities[i % 3]);
  return y;
}

void BM_ZffAnalysis(benchmark::State& st) {
  const auto w = Vowel(static_cast<double>(st.range(0)) / 1000.0);
  for (auto _ : st) benchmark::DoNotOptimize(gk::AnalyzeZff(w));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(w.size()));
}
BENCHMARK(BM_ZffAnalysis)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_QcpSource(benchmark::State& st) {
  const auto w = Vowel(static_cast<double>(st.range(0)) / 1000.0);
  for (auto _ : st) benchmark::DoNotOptimize(gk::QcpGlottalSource(w));
  st.SetItemsProcessed(st.iterations() * static_cast<int64_t>(w.size()));
}
BENCHMARK(BM_QcpSource)->Arg(500)->Arg(2000)->Unit(benchmark::kMillisecond);

void BM_Features(benchmark::State& st) {
  const auto w = Vowel(0.5);
  const auto kind = static_cast<gk::FeatureKind>(st.range(0));
  st.SetLabel(std::string(gk::FeatureKindName(kind)));
  for (auto _ : st) benchmark::DoNotOptimize(gk::ExtractSpectralFeature(w, kind, {}));
}
BENCHMARK(BM_Features)
    ->Arg(static_cast<int>(gk::FeatureKind::kSpectrogram513))
    ->Arg(static_cast<int>(gk::FeatureKind::kMel80))
    ->Arg(static_cast<int>(gk::FeatureKind::kMfcc39))
    ->Unit(benchmark::kMicrosecond);

void BM_SvmTrain(benchmark::State& st) {
  const auto n = static_cast<std::size_t>(st.range(0));
  const auto x = Rows(n, 80, 7);
  const auto y = Labels(n);
  for (auto _ : st) benchmark::DoNotOptimize(gk::TrainSvm(x, y));
}
BENCHMARK(BM_SvmTrain)->Arg(90)->Arg(330)->Unit(benchmark::kMillisecond);

void BM_SvmPredict(benchmark::State& st) {
  const auto x = Rows(330, 80, 7);
  const auto m = gk::TrainSvm(x, Labels(330));
  const auto probe = Rows(1, 80, 8);
  for (auto _ : st) benchmark::DoNotOptimize(m.Predict(gk::Row(probe, 0)));
}
BENCHMARK(BM_SvmPredict)->Unit(benchmark::kMicrosecond);

void BM_CnnGradient(benchmark::State& st) {
  const auto d = static_cast<std::size_t>(st.range(0));
  auto m = gk::CnnModel::Create(d, {});
  const auto x = Rows(64, d, 3);
  const auto y = Labels(64);
  std::vector<double> grad;
  for (auto _ : st) benchmark::DoNotOptimize(m.LossAndGradient(x, y, grad));
}
BENCHMARK(BM_CnnGradient)->Arg(80)->Arg(513)->Arg(1024)->Unit(benchmark::kMillisecond);

void BM_CnnEpoch(benchmark::State& st) {
  const auto x = Rows(300, 80, 4);
  const auto y = Labels(300);
  gk::CnnConfig cfg;
  cfg.max_epochs = 1;
  cfg.patience = 0;
  for (auto _ : st) benchmark::DoNotOptimize(gk::TrainCnn(x, y, x, y, cfg));
}
BENCHMARK(BM_CnnEpoch)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
