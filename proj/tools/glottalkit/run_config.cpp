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

#include "run_config.hpp"

#include <fmt/format.h>

#include "glottalkit/error.hpp"

namespace glottalkit::cli {
namespace {

constexpr const char* kQcpGroup = "QCP overrides";
constexpr const char* kZffGroup = "ZFF overrides";
constexpr const char* kSpectralGroup = "Spectral overrides";
constexpr const char* kSvmGroup = "SVM overrides";
constexpr const char* kCnnGroup = "CNN overrides";
constexpr const char* kSynthGroup = "Synthesis overrides";
constexpr const char* kIoGroup = "Input overrides";

void AddOverrides(CLI::App& app, RunConfig& c) {
  auto& q = c.pipeline.qcp;
  app.add_option("--qcp.dq", q.ame.dq, "AME duration quotient")->group(kQcpGroup)->capture_default_str();
  app.add_option("--qcp.pq", q.ame.pq, "AME position quotient")->group(kQcpGroup)->capture_default_str();
  app.add_option("--qcp.n_ramp", q.ame.n_ramp, "AME ramp length (samples)")->group(kQcpGroup)->capture_default_str();
  app.add_option("--qcp.d_min", q.ame.d_min, "AME floor weight")->group(kQcpGroup)->capture_default_str();
  app.add_option("--qcp.order", q.order, "LP order (0: round(fs/1000)+2)")->group(kQcpGroup)->capture_default_str();
  app.add_option("--qcp.frame_ms", q.frame.length_ms, "analysis frame length")->group(kQcpGroup)->capture_default_str();
  app.add_option("--qcp.shift_ms", q.frame.shift_ms, "analysis frame shift")->group(kQcpGroup)->capture_default_str();
  app.add_option("--qcp.pre_emphasis", q.pre_emphasize, "pre-emphasize before WLP")->group(kQcpGroup)->capture_default_str();
  app.add_option("--qcp.integrate", q.integrate, "leaky-integrate the residual")->group(kQcpGroup)->capture_default_str();
  app.add_option("--qcp.leak", q.leak, "leaky integrator coefficient")->group(kQcpGroup)->capture_default_str();

  // QCP's GCI detection and the ZFF variants share one set of ZFF options.
  auto& z = c.pipeline.zff;
  app.add_option("--zff.f0_min", z.f0_min, "lower pitch search bound (Hz)")->group(kZffGroup)->capture_default_str();
  app.add_option("--zff.f0_max", z.f0_max, "upper pitch search bound (Hz)")->group(kZffGroup)->capture_default_str();
  app.add_option("--zff.trend_passes", z.trend_passes, "local-mean removal passes")->group(kZffGroup)->capture_default_str();
  app.add_option("--zff.polarity", c.zff_polarity, "positive or negative")
      ->group(kZffGroup)->capture_default_str()->check(CLI::IsMember({"positive", "negative"}));

  auto& s = c.pipeline.spectral;
  app.add_option("--spectral.frame_ms", s.frame.length_ms, "frame length")->group(kSpectralGroup)->capture_default_str();
  app.add_option("--spectral.shift_ms", s.frame.shift_ms, "frame shift")->group(kSpectralGroup)->capture_default_str();
  app.add_option("--spectral.n_fft", s.n_fft, "FFT size")->group(kSpectralGroup)->capture_default_str();
  app.add_option("--spectral.n_mels", s.n_mels, "mel filters")->group(kSpectralGroup)->capture_default_str();
  app.add_option("--spectral.n_cepstra", s.n_cepstra, "static cepstral coefficients")->group(kSpectralGroup)->capture_default_str();
  app.add_option("--spectral.delta_window", s.delta_window, "delta regression half-width")->group(kSpectralGroup)->capture_default_str();
  app.add_option("--spectral.pre_emphasis", s.pre_emphasize, "pre-emphasize before framing")->group(kSpectralGroup)->capture_default_str();
  app.add_option("--wav.peak_normalize", c.pipeline.wav.peak_normalize, "scale inputs to unit peak")->group(kIoGroup)->capture_default_str();

  auto& svm = c.model_cfg.svm;
  app.add_option("--svm.c", svm.c, "box constraint")->group(kSvmGroup)->capture_default_str();
  app.add_option("--svm.gamma", c.svm_gamma, "RBF gamma (0: 1/(D*Var(X)))")->group(kSvmGroup)->capture_default_str();
  app.add_option("--svm.tolerance", svm.tolerance, "SMO stopping tolerance")->group(kSvmGroup)->capture_default_str();
  app.add_option("--svm.max_iterations", svm.max_iterations, "SMO iteration cap")->group(kSvmGroup)->capture_default_str();

  auto& cnn = c.model_cfg.cnn;
  app.add_option("--cnn.learning_rate", cnn.learning_rate, "Adam step size")->group(kCnnGroup)->capture_default_str();
  app.add_option("--cnn.batch_size", cnn.batch_size, "mini-batch size")->group(kCnnGroup)->capture_default_str();
  app.add_option("--cnn.max_epochs", cnn.max_epochs, "epoch cap")->group(kCnnGroup)->capture_default_str();
  app.add_option("--cnn.patience", cnn.patience, "early-stopping patience (0 disables)")->group(kCnnGroup)->capture_default_str();
  app.add_option("--cnn.hidden", cnn.hidden, "dense layer width")->group(kCnnGroup)->capture_default_str();
  app.add_option("--cnn.bn_momentum", cnn.bn_momentum, "batch-norm running-average momentum")->group(kCnnGroup)->capture_default_str();

  auto& k = c.corpus;
  app.add_option("--synth.speakers", k.n_speakers, "synthetic speakers")->group(kSynthGroup)->capture_default_str();
  app.add_option("--synth.repetitions", k.repetitions, "repetitions per vowel")->group(kSynthGroup)->capture_default_str();
  app.add_option("--synth.duration", k.duration_s, "utterance duration (s)")->group(kSynthGroup)->capture_default_str();
  app.add_option("--synth.fs", k.fs, "sampling rate (Hz)")->group(kSynthGroup)->capture_default_str();
  app.add_option("--synth.f0", k.base_f0, "base f0 (Hz)")->group(kSynthGroup)->capture_default_str();
  app.add_option("--synth.f0_spread", k.f0_spread, "per-speaker f0 spread")->group(kSynthGroup)->capture_default_str();
  app.add_option("--synth.formant_spread", k.formant_spread, "per-speaker formant spread")->group(kSynthGroup)->capture_default_str();
}

CLI::App* Sub(CLI::App& app, RunConfig& c, const char* name, const char* help) {
  auto* sub = app.add_subcommand(name, help);
  sub->callback([&c, name] { c.subcommand = name; });
  return sub;
}

void AddManifest(CLI::App* sub, RunConfig& c, bool required = true) {
  auto* opt = sub->add_option("--manifest", c.manifest, "dataset manifest CSV");
  if (required) opt->required();
}

void AddOutDir(CLI::App* sub, RunConfig& c) {
  sub->add_option("--out-dir", c.out_dir, "output directory")->required();
}

void AddVariant(CLI::App* sub, RunConfig& c) {
  sub->add_option("--variant", c.variant, "source variant")
      ->check(CLI::IsMember({"speech", "nsa", "speech-qcp", "speech-zff", "nsa-qcp", "nsa-zff"}));
}

void AddFeatureInputs(CLI::App* sub, RunConfig& c) {
  auto* m = sub->add_option("--manifest", c.manifest, "dataset manifest CSV");
  auto* f = sub->add_option("--features", c.features, "feature CSV written by 'features'");
  m->excludes(f);
  sub->add_option("--feature", c.feature, "feature kind")
      ->check(CLI::IsMember({"spec513", "mel80", "mfcc39", "embedding"}))
      ->capture_default_str();
  sub->add_option("--layer", c.layer, "embedding layer index");
  AddVariant(sub, c);
  sub->add_option("--workers", c.workers, "worker threads")->capture_default_str();
}

void AddClassifier(CLI::App* sub, RunConfig& c) {
  sub->add_option("--classifier", c.classifier, "classifier")
      ->check(CLI::IsMember({"svm", "cnn"}))
      ->capture_default_str();
  sub->add_option("--seed", c.seed, "random seed")->capture_default_str();
}

}  // namespace

void Register(CLI::App& app, RunConfig& c) {
  app.fallthrough();
  app.require_subcommand(1);
  AddOverrides(app, c);

  for (const char* name : {"zff", "qcp"}) {
    auto* sub = Sub(app, c, name,
                    std::string_view(name) == "zff"
                        ? "zero-frequency filtering: glottal-source WAVs and GCI CSVs"
                        : "quasi-closed-phase inverse filtering: glottal-source WAVs and GCI CSVs");
    AddManifest(sub, c);
    AddOutDir(sub, c);
    AddVariant(sub, c);
    sub->add_option("--workers", c.workers, "worker threads")->capture_default_str();
  }

  auto* features = Sub(app, c, "features", "extract one feature vector per manifest row");
  AddManifest(features, c);
  AddOutDir(features, c);
  features->add_option("--feature", c.feature, "feature kind")
      ->check(CLI::IsMember({"spec513", "mel80", "mfcc39", "embedding"}))
      ->capture_default_str();
  features->add_option("--layer", c.layer, "embedding layer index");
  AddVariant(features, c);
  features->add_option("--workers", c.workers, "worker threads")->capture_default_str();

  auto* validate = Sub(app, c, "embed-validate", "validate VQEMB1 embedding files");
  validate->add_option("inputs", c.inputs, "VQEMB1 files");
  AddManifest(validate, c, false);

  auto* synth = Sub(app, c, "synth", "write a synthetic vowel corpus with manifest and GCI sidecars");
  AddOutDir(synth, c);
  synth->add_option("--modality", c.modality, "speech, nsa or both")
      ->check(CLI::IsMember({"speech", "nsa", "both"}))
      ->capture_default_str();
  synth->add_option("--encoding", c.encoding, "WAV sample encoding")
      ->check(CLI::IsMember({"pcm16", "float32"}))
      ->capture_default_str();
  synth->add_option("--seed", c.seed, "random seed")->capture_default_str();

  auto* train = Sub(app, c, "train", "train a classifier on every record");
  AddFeatureInputs(train, c);
  AddClassifier(train, c);
  AddOutDir(train, c);

  auto* evaluate = Sub(app, c, "evaluate", "score a trained model on a dataset");
  AddFeatureInputs(evaluate, c);
  evaluate->add_option("--model", c.model, "VQMDL1 model file")->required();
  AddOutDir(evaluate, c);

  auto* loso = Sub(app, c, "loso", "leave-one-speaker-out cross-validation");
  AddFeatureInputs(loso, c);
  AddClassifier(loso, c);
  AddOutDir(loso, c);

  auto* sweep = Sub(app, c, "layer-sweep", "LOSO accuracy for every embedding layer");
  AddManifest(sweep, c);
  AddVariant(sweep, c);
  AddClassifier(sweep, c);
  sweep->add_option("--workers", c.workers, "worker threads")->capture_default_str();
  AddOutDir(sweep, c);
}

void Finalize(RunConfig& c) {
  const auto kind = ParseFeatureKind(c.feature);
  Require(kind.has_value(), ErrorCode::kInvalidArgument, fmt::format("unknown feature '{}'", c.feature));
  c.pipeline.feature = *kind;
  c.pipeline.layer = c.layer;
  c.pipeline.workers = std::max<std::size_t>(1, c.workers);
  if (!c.variant.empty()) c.pipeline.variant = ParseSourceVariant(c.variant);
  c.pipeline.zff.polarity = c.zff_polarity == "negative" ? Polarity::kNegative : Polarity::kPositive;
  c.pipeline.qcp.zff = c.pipeline.zff;
  c.pipeline.qcp.ame.Validate();
  c.pipeline.qcp.frame.Validate();
  c.pipeline.spectral.frame.Validate();

  const auto clf = ParseClassifierKind(c.classifier);
  Require(clf.has_value(), ErrorCode::kInvalidArgument, fmt::format("unknown classifier '{}'", c.classifier));
  c.model_cfg.kind = *clf;
  if (c.svm_gamma != 0.0) c.model_cfg.svm.fixed_gamma = c.svm_gamma;
  c.model_cfg.svm.Validate();
  c.model_cfg.cnn.seed = c.seed;
  c.model_cfg.cnn.Validate();

  c.corpus.seed = c.seed;
  c.corpus.speech = c.modality != "nsa";
  c.corpus.nsa = c.modality != "speech";
}

}  // namespace glottalkit::cli
