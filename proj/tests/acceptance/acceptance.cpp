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

// Acceptance checks. Prints one PASS/FAIL line per criterion and exits
// nonzero if any fails.
//
//   glottalkit_acceptance <fixtures-dir> <glottalkit-cli>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <complex>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <fmt/core.h>

#include "glottalkit/classifier.hpp"
#include "glottalkit/cnn.hpp"
#include "glottalkit/embeddings.hpp"
#include "glottalkit/error.hpp"
#include "glottalkit/evaluation.hpp"
#include "glottalkit/log.hpp"
#include "glottalkit/lp.hpp"
#include "glottalkit/parallel.hpp"
#include "glottalkit/pipeline.hpp"
#include "glottalkit/qcp.hpp"
#include "glottalkit/source.hpp"
#include "glottalkit/spectral.hpp"
#include "glottalkit/svm.hpp"
#include "glottalkit/synth.hpp"
#include "glottalkit/zff.hpp"
#include "glottalkit/zscore.hpp"
#include "json.hpp"
#include "support/inputs.hpp"
#include "support/kkt.hpp"
#include "support/oracles.hpp"
#include "support/ripple.hpp"

namespace gk = glottalkit;
namespace fs = std::filesystem;
using gk::VoiceQuality;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void Report(int id, bool pass, const std::string& title, const std::string& detail) {
  if (!pass) ++g_failures;
  fmt::print("{} [{}] {}: {}\n", pass ? "PASS" : "FAIL", id, title, detail);
  std::fflush(stdout);
}

double Seconds(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

std::size_t Workers() { return std::max(1u, std::thread::hardware_concurrency()); }

double RelErr(const std::vector<double>& a, const std::vector<double>& b) {
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    num += (a[i] - b[i]) * (a[i] - b[i]);
    den += b[i] * b[i];
  }
  return std::sqrt(num / den);
}

std::string Slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

// --- 1 ----------------------------------------------------------------------

void FeatureDimensions() {
  std::vector<gk::Waveform> inputs;
  for (auto q : gk::kAllQualities) {
    for (double dur : {0.05, 0.5, 3.0}) {
      auto p = gk::MakePreset(q, gk::Vowel::kI, 140.0);
      p.duration_s = dur;
      inputs.push_back(gk::SynthesizeVowel(p, 16000.0, 3).wave);
    }
  }
  inputs.emplace_back(gk::testing::NoiseSignal(4, 16000), 16000.0);
  inputs.emplace_back(std::vector<double>(8000, 0.0), 16000.0);
  inputs.emplace_back(gk::testing::Sine(720, 300.0, 16000.0, 0.3, 0.0), 16000.0);
  inputs.push_back(gk::QcpGlottalSource(inputs[1]).ToWaveform());
  inputs.push_back(gk::ZffGlottalSource(inputs[4]).ToWaveform());

  bool dims_ok = true;
  double worst = 0.0;
  for (const auto& w : inputs) {
    for (auto [kind, dim] : {std::pair{gk::FeatureKind::kSpectrogram513, 513u},
                             std::pair{gk::FeatureKind::kMel80, 80u},
                             std::pair{gk::FeatureKind::kMfcc39, 39u}}) {
      const auto t0 = Clock::now();
      const auto f = gk::ExtractSpectralFeature(w, kind, {});
      worst = std::max(worst, Seconds(t0));
      dims_ok = dims_ok && f.dim() == dim;
    }
  }
  Report(1, dims_ok && worst < 1.0, "feature dimensions 513/80/39",
         fmt::format("{} inputs, dims {}, slowest extraction {:.4f} s (limit 1 s)", inputs.size(),
                     dims_ok ? "exact" : "WRONG", worst));
}

// --- 2 ----------------------------------------------------------------------

void ZffOracle() {
  const std::size_t n = 16000, offset = 37;
  std::size_t interior = 0, aligned = 0;
  for (std::size_t period : {80u, 100u, 133u, 160u, 200u}) {
    const auto s = gk::testing::ImpulseTrain(n, period, offset);
    const auto a = gk::AnalyzeZff(gk::Waveform(s, 16000.0));
    const std::size_t guard = a.signal.edge_guard;
    for (std::size_t p = offset; p < n; p += period) {
      if (p < guard || p + guard >= n) continue;
      ++interior;
      const bool hit = std::any_of(a.gcis.instants.begin(), a.gcis.instants.end(), [&](auto g) {
        return std::labs(static_cast<long>(g) - static_cast<long>(p)) <= 1;
      });
      aligned += hit ? 1 : 0;
    }
  }
  const double frac = static_cast<double>(aligned) / static_cast<double>(std::max<std::size_t>(interior, 1));

  const auto t0 = Clock::now();
  long worst_dev = 0;
  std::size_t periods = 0;
  for (double f0 : {200.0, 160.0, 125.0}) {
    const long expected = std::lround(16000.0 / f0);
    for (auto q : gk::kAllQualities) {
      for (auto v : gk::kAllVowels) {
        auto p = gk::MakePreset(q, v, f0);
        p.jitter_pct = 0.0;
        p.shimmer_pct = 0.0;
        const auto s = gk::SynthesizeVowel(p, 16000.0, 5);
        const auto a = gk::AnalyzeZff(s.wave);
        for (std::size_t i = 1; i < a.gcis.instants.size(); ++i) {
          const long gap = static_cast<long>(a.gcis.instants[i] - a.gcis.instants[i - 1]);
          worst_dev = std::max(worst_dev, std::labs(gap - expected));
          ++periods;
        }
      }
    }
  }
  const double secs = Seconds(t0);
  Report(2, frac >= 0.99 && interior > 0 && worst_dev <= 2 && periods > 0,
         "ZFF epoch alignment",
         fmt::format("impulse trains {}/{} interior pulses within +-1 ({:.2f}%); synthetic vowels "
                     "{} periods, worst deviation {} samples (limit 2), {:.2f} s",
                     aligned, interior, 100.0 * frac, periods, worst_dev, secs));
}

// --- 3 ----------------------------------------------------------------------

gk::VocalTractFilter FromRoots(const std::vector<std::complex<double>>& roots) {
  std::vector<std::complex<double>> poly = {1.0};
  for (auto r : roots) {
    std::vector<std::complex<double>> next(poly.size() + 1, 0.0);
    for (std::size_t i = 0; i < poly.size(); ++i) {
      next[i] += poly[i];
      next[i + 1] -= r * poly[i];
    }
    poly = std::move(next);
  }
  gk::VocalTractFilter f;
  for (std::size_t i = 1; i < poly.size(); ++i) f.a.push_back(poly[i].real());
  return f;
}

void LpOracle() {
  double ar2_worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const auto s = gk::testing::Ar2Signal(seed, 4000);
    const auto f = gk::WeightedLinearPrediction(s, std::vector<double>(s.size(), 1.0), 2);
    ar2_worst = std::max({ar2_worst, std::abs(f.a[0] + 1.5) / 1.5, std::abs(f.a[1] - 0.7) / 0.7});
  }

  double wlp_worst = 0.0;
  for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
    const auto s = gk::testing::Ar2Signal(seed, 400);
    for (std::size_t p : {2u, 8u, 18u, 24u}) {
      const auto w = gk::WeightedLinearPrediction(s, std::vector<double>(s.size(), 1.0), p);
      const auto c = gk::CovarianceLinearPrediction(s, p);
      wlp_worst = std::max(wlp_worst, RelErr(w.a, c.a));
    }
  }

  double exc_worst = 0.0;
  const auto filt = FromRoots({std::polar(0.97, 0.2), std::polar(0.97, -0.2), std::polar(0.93, 0.9),
                               std::polar(0.93, -0.9), std::polar(0.9, 2.1), std::polar(0.9, -2.1),
                               -0.4});
  for (std::uint64_t seed : {9u, 10u}) {
    const auto x = gk::testing::NoiseSignal(seed, 4000);
    const auto e = gk::InverseFilter(gk::AllPoleFilter(x, filt), filt);
    for (std::size_t n = filt.order(); n < x.size(); ++n) {
      exc_worst = std::max(exc_worst, std::abs(e[n] - x[n]));
    }
  }

  double ripple_min = 1e300;
  for (auto q : gk::kAllQualities) {
    for (auto v : gk::kAllVowels) {
      const auto p = gk::MakePreset(q, v);
      auto flat = p;
      flat.formants.clear();
      const auto speech = gk::SynthesizeVowel(p, 16000.0, 1);
      const auto truth = gk::SynthesizeVowel(flat, 16000.0, 1);
      const auto src = gk::QcpGlottalSource(speech.wave);
      const double before =
          gk::testing::EnvelopeRipple(speech.wave.samples(), truth.wave.samples(), 16000.0);
      const double after = gk::testing::EnvelopeRipple(src.samples, truth.wave.samples(), 16000.0);
      ripple_min = std::min(ripple_min, before - after);
    }
  }
  Report(3,
         ar2_worst <= 0.05 && wlp_worst <= 1e-8 && exc_worst <= 1e-10 && ripple_min >= 6.0,
         "WLP/QCP",
         fmt::format("AR(2) worst coefficient error {:.2f}% (limit 5%); uniform WLP vs covariance "
                     "{:.2e} (limit 1e-8); excitation {:.2e} (limit 1e-10); QCP ripple reduction "
                     "min {:.2f} dB over 15 vowels (limit 6)",
                     100.0 * ar2_worst, wlp_worst, exc_worst, ripple_min));
}

// --- 4 and 6 share the corpus ----------------------------------------------------

struct CorpusFeatures {
  std::map<std::pair<gk::SourceVariant, gk::FeatureKind>, gk::LabeledDataset> sets;
  double seconds = 0.0;
};

CorpusFeatures BuildCorpusFeatures() {
  const auto t0 = Clock::now();
  gk::CorpusOptions co;
  co.speech = true;
  co.nsa = true;
  const auto items = gk::GenerateCorpus(co);
  CorpusFeatures out;
  using V = gk::SourceVariant;
  const std::vector<gk::FeatureKind> kinds{gk::FeatureKind::kSpectrogram513,
                                           gk::FeatureKind::kMel80, gk::FeatureKind::kMfcc39};
  for (auto variant : {V::kSpeech, V::kSpeechQcp, V::kNsa, V::kNsaQcp}) {
    std::vector<const gk::CorpusItem*> chosen;
    for (const auto& it : items) {
      if (it.row.variant == gk::BaseVariant(variant)) chosen.push_back(&it);
    }
    gk::PipelineOptions opts;
    std::vector<std::vector<gk::FeatureVector>> feats(chosen.size());
    gk::ParallelFor(chosen.size(), Workers(), [&](std::size_t i) {
      const auto w = gk::DeriveVariant(chosen[i]->synth.wave, variant, opts);
      for (auto k : kinds) feats[i].push_back(gk::ExtractSpectralFeature(w, k, opts.spectral));
    });
    std::vector<gk::ManifestRow> rows;
    for (const auto* c : chosen) {
      rows.push_back(c->row);
      rows.back().variant = variant;
    }
    for (std::size_t k = 0; k < kinds.size(); ++k) {
      const auto dim = static_cast<Eigen::Index>(feats[0][k].dim());
      gk::RowMatrix x(static_cast<Eigen::Index>(chosen.size()), dim);
      for (std::size_t i = 0; i < chosen.size(); ++i) {
        for (Eigen::Index j = 0; j < dim; ++j) {
          x(static_cast<Eigen::Index>(i), j) = feats[i][k][static_cast<std::size_t>(j)];
        }
      }
      out.sets.emplace(std::pair{variant, kinds[k]}, gk::LabeledDataset(rows, std::move(x), kinds[k]));
    }
  }
  out.seconds = Seconds(t0);
  return out;
}

std::vector<VoiceQuality> PredictAll(const gk::SvmModel& m, const gk::RowMatrix& x) {
  std::vector<VoiceQuality> out;
  for (Eigen::Index i = 0; i < x.rows(); ++i) out.push_back(m.Predict(gk::Row(x, i)));
  return out;
}

void SvmChecks(const CorpusFeatures& corpus) {
  // Dual objective against the projected-gradient QP oracle.
  double dual_worst = 0.0;
  std::size_t problems = 0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    for (std::size_t n : {8u, 14u, 20u}) {
      for (double c : {1.0, 10.0}) {
        const auto p = gk::testing::SvmPoints(seed, n);
        const auto k = gk::RbfKernelMatrix(p.x, 0.5);
        const auto sol = gk::SolveSmo(k, p.y, c, 1e-6, 10'000'000);
        const double oracle = gk::testing::ProjectedGradientDual(k, p.y, c);
        dual_worst = std::max(dual_worst, std::abs(sol.dual_objective - oracle) / std::abs(oracle));
        ++problems;
      }
    }
  }

  // KKT audit of every binary machine on every fold of the synthetic run.
  const auto& ds = corpus.sets.at({gk::SourceVariant::kSpeech, gk::FeatureKind::kMel80});
  const gk::SvmConfig svm_cfg;
  double kkt_worst = 0.0, bound_worst = 0.0, eq_worst = 0.0;
  std::size_t machines = 0;
  const auto plans = gk::PlanFolds(ds, gk::ClassifierKind::kSvm);
  for (const auto& plan : plans) {
    const gk::RowMatrix raw = ds.Rows(plan.train);
    const gk::RowMatrix x = gk::ZScoreStats::Fit(raw).Apply(raw);
    const auto t = gk::TrainSvmDetailed(x, ds.Labels(plan.train), svm_cfg);
    for (const auto& rec : t.records) {
      const auto r = gk::testing::AuditKkt(rec, x, t.model.gamma, svm_cfg.c);
      kkt_worst = std::max(kkt_worst, r.worst_violation);
      bound_worst = std::max(bound_worst, r.worst_bound);
      eq_worst = std::max(eq_worst, r.equality);
      ++machines;
    }
  }

  // Uniform input scaling, on raw corpus features (no z-score in between).
  bool invariant = true;
  const auto& plan = plans.front();
  const gk::RowMatrix train = ds.Rows(plan.train);
  const gk::RowMatrix test = ds.Rows(plan.test);
  const auto base = gk::TrainSvm(train, ds.Labels(plan.train));
  const auto before = PredictAll(base, test);
  for (double a : {0.25, 8.0, 1024.0}) {
    const gk::RowMatrix xs = a * train;
    const gk::RowMatrix ts = a * test;
    invariant = invariant && PredictAll(gk::TrainSvm(xs, ds.Labels(plan.train)), ts) == before;
  }

  Report(4,
         dual_worst <= 1e-5 && kkt_worst <= svm_cfg.tolerance && bound_worst <= 0.0 &&
             eq_worst <= 1e-9 && invariant,
         "SVM",
         fmt::format("dual vs QP oracle worst rel {:.2e} over {} problems (limit 1e-5); KKT worst "
                     "{:.2e} over {} machines in {} folds (limit {:.0e}), bound {:.1e}, equality "
                     "{:.1e}; gamma scaling {}",
                     dual_worst, problems, kkt_worst, machines, plans.size(), svm_cfg.tolerance,
                     bound_worst, eq_worst, invariant ? "identical" : "CHANGED predictions"));
}

// --- 5 ----------------------------------------------------------------------

gk::RowMatrix RandomRows(std::uint64_t seed, std::size_t n, std::size_t d) {
  gk::testing::Lcg g(seed);
  gk::RowMatrix x(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(d));
  for (Eigen::Index i = 0; i < x.size(); ++i) x.data()[i] = g.Noise();
  return x;
}

std::vector<VoiceQuality> Cycle(std::size_t n) {
  std::vector<VoiceQuality> y;
  for (std::size_t i = 0; i < n; ++i) y.push_back(gk::kAllQualities[i % 3]);
  return y;
}

void CnnChecks() {
  gk::CnnConfig cfg;
  cfg.seed = 3;
  auto m = gk::CnnModel::Create(80, cfg);
  const auto x = RandomRows(2, 5, 80);
  const auto y = Cycle(5);
  std::vector<double> grad;
  m.LossAndGradient(x, y, grad);
  const double h = 1e-4;
  double worst = 0.0;
  for (std::size_t i = 0; i < grad.size(); ++i) {
    auto& p = m.parameters()[i];
    const double keep = p;
    p = keep + h;
    const double up = m.Loss(x, y, gk::BatchNormMode::kTraining);
    p = keep - h;
    const double down = m.Loss(x, y, gk::BatchNormMode::kTraining);
    p = keep;
    const double numeric = (up - down) / (2.0 * h);
    const double scale = std::max({std::abs(grad[i]), std::abs(numeric), 1e-7});
    worst = std::max(worst, std::abs(grad[i] - numeric) / scale);
  }

  bool widths = true;
  std::string width_list;
  for (std::size_t d : {80u, 513u, 768u, 1024u}) {
    const std::size_t w = gk::CnnLayout::Make(d, {}).flatten_width();
    widths = widths && w == 32 * (gk::PaddedInputDim(d) / 8);
    width_list += fmt::format("{}{}->{}", width_list.empty() ? "" : " ", d, w);
  }
  const std::size_t table[] = {320, 2080, 3072, 4096};
  std::size_t ti = 0;
  for (std::size_t d : {80u, 513u, 768u, 1024u}) {
    widths = widths && gk::CnnLayout::Make(d, {}).flatten_width() == table[ti++];
  }

  gk::CnnConfig toy;
  toy.max_epochs = 500;
  toy.patience = 0;
  toy.seed = 1;
  const auto tx = RandomRows(18, 3, 16);
  const auto ty = Cycle(3);
  const double loss = gk::TrainCnn(tx, ty, tx, ty, toy).train_loss.back();

  Report(5, worst <= 1e-4 && widths && loss < 0.01, "CNN",
         fmt::format("gradient check worst rel {:.2e} over {} parameters (limit 1e-4); flatten "
                     "widths {}; toy memorization loss {:.2e} (limit 1e-2)",
                     worst, grad.size(), width_list, loss));
}

// --- 6 ----------------------------------------------------------------------

void EndToEnd(const CorpusFeatures& corpus) {
  const auto t0 = Clock::now();
  gk::EvaluationConfig cfg;
  cfg.workers = Workers();
  std::map<std::pair<gk::SourceVariant, gk::FeatureKind>, double> acc;
  std::size_t folds = 0;
  for (const auto& [key, ds] : corpus.sets) {
    const auto r = gk::LosoCrossValidate(ds, cfg);
    acc[key] = r.summary.mean_accuracy;
    folds = r.folds.size();
  }
  const double secs = corpus.seconds + Seconds(t0);
  using V = gk::SourceVariant;
  const double mel = acc.at({V::kSpeech, gk::FeatureKind::kMel80});
  bool ordering = true;
  std::string table;
  for (auto kind : {gk::FeatureKind::kMel80, gk::FeatureKind::kMfcc39,
                    gk::FeatureKind::kSpectrogram513}) {
    for (auto [raw, qcp] : {std::pair{V::kSpeech, V::kSpeechQcp}, std::pair{V::kNsa, V::kNsaQcp}}) {
      const double a = acc.at({raw, kind}), b = acc.at({qcp, kind});
      ordering = ordering && b >= a;
      table += fmt::format("; {} {} {:.3f} vs {} {:.3f}", gk::FeatureKindName(kind),
                           gk::SourceVariantName(qcp), b, gk::SourceVariantName(raw), a);
    }
  }
  Report(6, folds == 12 && mel >= 0.90 && ordering && secs < 300.0, "end-to-end LOSO",
         fmt::format("{} folds, speech mel80+SVM {:.3f} (limit 0.90){}; {:.1f} s (limit 300)",
                     folds, mel, table, secs));
}

// --- 7 ----------------------------------------------------------------------

int Sh(const std::string& cli, const std::string& args) {
  const std::string cmd = "\"" + cli + "\" " + args + " >/dev/null 2>&1";
  return std::system(cmd.c_str());
}

void Determinism(const std::string& cli) {
  const fs::path root = fs::temp_directory_path() / "glottalkit_acceptance_determinism";
  fs::remove_all(root);
  const std::string small = "--synth.speakers 3 --synth.repetitions 1 --synth.duration 0.3";
  bool ran = true;
  // Reports embed input paths, so both pipelines read the first corpus.
  const std::string m = (root / "a" / "corpus" / "manifest.csv").string();
  for (const char* run : {"a", "b"}) {
    const fs::path d = root / run;
    ran = ran && Sh(cli, "synth --modality both --seed 9 --out-dir " + (d / "corpus").string() +
                         " " + small) == 0;
  }
  for (const char* run : {"a", "b"}) {
    const fs::path d = root / run;
    ran = ran && Sh(cli, "qcp --manifest " + m + " --variant nsa --out-dir " + (d / "qcp").string()) == 0;
    ran = ran && Sh(cli, "zff --manifest " + m + " --variant speech --out-dir " + (d / "zff").string()) == 0;
    ran = ran && Sh(cli, "features --manifest " + m + " --variant speech-zff --feature mfcc39 "
                         "--out-dir " + (d / "feat").string()) == 0;
    ran = ran && Sh(cli, "train --manifest " + m + " --variant nsa-qcp --classifier cnn --seed 5 "
                         "--cnn.max_epochs 4 --out-dir " + (d / "train").string()) == 0;
    ran = ran && Sh(cli, "evaluate --manifest " + m + " --variant nsa-qcp --model " +
                         (d / "train" / "model.vqmdl").string() + " --out-dir " +
                         (d / "eval").string()) == 0;
    ran = ran && Sh(cli, "loso --manifest " + m + " --variant speech-qcp --workers " +
                         std::string(*run == 'a' ? "1" : "4") + " --out-dir " +
                         (d / "loso").string()) == 0;
    ran = ran && Sh(cli, "loso --manifest " + m + " --variant speech --classifier cnn --seed 5 "
                         "--cnn.max_epochs 4 --workers 3 --out-dir " + (d / "loso_cnn").string()) == 0;
  }
  std::size_t files = 0, differ = 0;
  if (ran) {
    for (const auto& e : fs::recursive_directory_iterator(root / "a")) {
      if (!e.is_regular_file()) continue;
      const auto other = root / "b" / fs::relative(e.path(), root / "a");
      ++files;
      if (!fs::exists(other) || Slurp(e.path()) != Slurp(other)) ++differ;
    }
  }
  Report(7, ran && files > 0 && differ == 0, "CLI determinism",
         ran ? fmt::format("{} artifacts from 9 subcommand runs compared, {} differ", files, differ)
             : std::string("a CLI run failed"));
}

// --- 8 ----------------------------------------------------------------------

std::string CodeName(gk::ErrorCode c) {
  switch (c) {
    case gk::ErrorCode::kBadMagic: return "BadMagic";
    case gk::ErrorCode::kLayerDimMismatch: return "LayerDimMismatch";
    case gk::ErrorCode::kTruncated: return "Truncated";
    case gk::ErrorCode::kNonFinite: return "NonFinite";
    case gk::ErrorCode::kParse: return "Parse";
    default: return "other";
  }
}

void Vqemb1(const fs::path& fixtures, const std::string& cli) {
  const fs::path dir = fixtures / "vqemb1";
  const auto expected = nlohmann::json::parse(Slurp(dir / "expected.json"));
  std::size_t lib_ok = 0, cli_ok = 0, total = 0;
  std::string mismatches;
  for (const auto& [name, want] : expected.items()) {
    ++total;
    std::string got = "ok";
    try {
      gk::ReadEmbeddingFile(dir / name);
    } catch (const gk::Error& e) {
      got = CodeName(e.code());
    }
    if (got == want.get<std::string>()) {
      ++lib_ok;
    } else {
      mismatches += fmt::format(" {}={}", name, got);
    }
    const int rc = Sh(cli, "embed-validate \"" + (dir / name).string() + "\"");
    if ((rc == 0) == (want == "ok")) ++cli_ok;
  }
  Report(8, total > 0 && lib_ok == total && cli_ok == total, "VQEMB1 fixtures",
         fmt::format("library {}/{}, CLI {}/{} fixtures classified as expected{}", lib_ok, total,
                     cli_ok, total, mismatches));
}

}  // namespace

int main(int argc, char** argv) {
  if (argc != 3) {
    std::fprintf(stderr, "usage: %s <fixtures-dir> <glottalkit-cli>\n", argv[0]);
    return 2;
  }
  const fs::path fixtures = argv[1];
  const std::string cli = argv[2];
  gk::SetLogLevel(gk::LogLevel::kWarn);

  auto guarded = [](int id, const char* title, auto&& fn) {
    try {
      fn();
    } catch (const std::exception& e) {
      Report(id, false, title, std::string("threw: ") + e.what());
    }
  };
  guarded(1, "feature dimensions 513/80/39", FeatureDimensions);
  guarded(2, "ZFF epoch alignment", ZffOracle);
  guarded(3, "WLP/QCP", LpOracle);
  CorpusFeatures corpus;
  guarded(4, "SVM", [&] {
    corpus = BuildCorpusFeatures();
    SvmChecks(corpus);
  });
  guarded(5, "CNN", CnnChecks);
  guarded(6, "end-to-end LOSO", [&] { EndToEnd(corpus); });
  guarded(7, "CLI determinism", [&] { Determinism(cli); });
  guarded(8, "VQEMB1 fixtures", [&] { Vqemb1(fixtures, cli); });
  return g_failures == 0 ? 0 : 1;
}
