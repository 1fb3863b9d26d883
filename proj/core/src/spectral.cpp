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

#include "glottalkit/spectral.hpp"

#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "glottalkit/error.hpp"
#include "glottalkit/fft.hpp"

namespace glottalkit {

std::string_view FeatureKindName(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::kSpectrogram513: return "spec513";
    case FeatureKind::kMel80: return "mel80";
    case FeatureKind::kMfcc39: return "mfcc39";
    case FeatureKind::kEmbedding: return "embedding";
  }
  return "unknown";
}

std::optional<FeatureKind> ParseFeatureKind(std::string_view name) {
  for (auto k : {FeatureKind::kSpectrogram513, FeatureKind::kMel80, FeatureKind::kMfcc39,
                 FeatureKind::kEmbedding}) {
    if (FeatureKindName(k) == name) return k;
  }
  return std::nullopt;
}

FeatureVector::FeatureVector(std::vector<double> values, FeatureKind kind)
    : values_(std::move(values)), kind_(kind) {
  const std::size_t d = values_.size();
  bool ok = false;
  switch (kind_) {
    case FeatureKind::kSpectrogram513: ok = d == 513; break;
    case FeatureKind::kMel80: ok = d == 80; break;
    case FeatureKind::kMfcc39: ok = d == 39; break;
    case FeatureKind::kEmbedding: ok = d == 768 || d == 1024; break;
  }
  Require(ok, ErrorCode::kDimensionMismatch,
          fmt::format("{} feature cannot have dimension {}", FeatureKindName(kind_), d));
  for (double v : values_) {
    Require(std::isfinite(v), ErrorCode::kNonFinite, "feature vector holds a non-finite value");
  }
}

double HzToMel(double hz) { return 2595.0 * std::log10(1.0 + hz / 700.0); }

double MelToHz(double mel) { return 700.0 * (std::pow(10.0, mel / 2595.0) - 1.0); }

namespace {

std::vector<double> MelEdges(std::size_t n_filters, double fs) {
  const double top = HzToMel(fs / 2.0);
  std::vector<double> edges(n_filters + 2);
  for (std::size_t i = 0; i < edges.size(); ++i) {
    edges[i] = MelToHz(top * static_cast<double>(i) / static_cast<double>(n_filters + 1));
  }
  return edges;
}

std::vector<double> RowMean(const Eigen::MatrixXd& m) {
  const Eigen::VectorXd mean = m.colwise().mean().transpose();
  return {mean.data(), mean.data() + mean.size()};
}

}  // namespace

std::vector<double> MelCenterFrequencies(std::size_t n_filters, double fs) {
  const auto edges = MelEdges(n_filters, fs);
  return {edges.begin() + 1, edges.end() - 1};
}

Eigen::MatrixXd MelFilterbank(std::size_t n_filters, std::size_t n_fft, double fs) {
  Require(n_filters >= 1, ErrorCode::kInvalidArgument, "mel filterbank needs at least one filter");
  const std::size_t bins = n_fft / 2 + 1;
  const auto edges = MelEdges(n_filters, fs);
  Eigen::MatrixXd fb = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_filters),
                                             static_cast<Eigen::Index>(bins));
  for (std::size_t j = 0; j < n_filters; ++j) {
    const double lo = edges[j], mid = edges[j + 1], hi = edges[j + 2];
    for (std::size_t k = 0; k < bins; ++k) {
      const double f = static_cast<double>(k) * fs / static_cast<double>(n_fft);
      double v = 0.0;
      if (f > lo && f <= mid) {
        v = (f - lo) / (mid - lo);
      } else if (f > mid && f < hi) {
        v = (hi - f) / (hi - mid);
      }
      fb(static_cast<Eigen::Index>(j), static_cast<Eigen::Index>(k)) = v;
    }
    Require(fb.row(static_cast<Eigen::Index>(j)).maxCoeff() > 0.0, ErrorCode::kInvalidArgument,
            fmt::format("mel filter {} of {} covers no FFT bin at n_fft={}, fs={}", j, n_filters,
                        n_fft, fs));
  }
  return fb;
}

Eigen::MatrixXd AmplitudeSpectra(const Waveform& w, const SpectralOptions& opts) {
  const Waveform src = opts.pre_emphasize ? PreEmphasize(w) : w;
  FrameSpec spec = opts.frame;
  spec.window = WindowKind::kHamming;
  const FrameMatrix frames = FrameSignal(src, spec);
  Require(frames.frame_length <= opts.n_fft, ErrorCode::kInvalidArgument,
          fmt::format("{}-sample frames exceed the {}-point FFT", frames.frame_length, opts.n_fft));
  RealFft fft(opts.n_fft);
  Eigen::MatrixXd spectra(static_cast<Eigen::Index>(frames.count),
                          static_cast<Eigen::Index>(fft.bins()));
  std::vector<double> mag(fft.bins());
  for (std::size_t k = 0; k < frames.count; ++k) {
    fft.Magnitude(frames.frame(k), mag);
    for (std::size_t b = 0; b < mag.size(); ++b) {
      spectra(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(b)) = mag[b];
    }
  }
  return spectra;
}

Eigen::MatrixXd DctII(const Eigen::MatrixXd& rows, std::size_t n_coeffs) {
  const auto n = rows.cols();
  const auto nc = static_cast<Eigen::Index>(n_coeffs);
  Eigen::MatrixXd basis(n, nc);
  for (Eigen::Index k = 0; k < nc; ++k) {
    const double scale = std::sqrt((k == 0 ? 1.0 : 2.0) / static_cast<double>(n));
    for (Eigen::Index i = 0; i < n; ++i) {
      basis(i, k) = scale * std::cos(std::numbers::pi * static_cast<double>(k) *
                                     (2.0 * static_cast<double>(i) + 1.0) /
                                     (2.0 * static_cast<double>(n)));
    }
  }
  return rows * basis;
}

Eigen::MatrixXd Deltas(const Eigen::MatrixXd& frames, int window) {
  const Eigen::Index t = frames.rows();
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(t, frames.cols());
  if (t == 0 || window <= 0) return out;
  double norm = 0.0;
  for (int n = 1; n <= window; ++n) norm += static_cast<double>(n * n);
  norm *= 2.0;
  for (Eigen::Index i = 0; i < t; ++i) {
    for (int n = 1; n <= window; ++n) {
      const Eigen::Index ahead = std::min<Eigen::Index>(t - 1, i + n);
      const Eigen::Index behind = std::max<Eigen::Index>(0, i - n);
      out.row(i) += static_cast<double>(n) * (frames.row(ahead) - frames.row(behind));
    }
  }
  return out / norm;
}

FeatureVector LogSpectrogramFromSpectra(const Eigen::MatrixXd& spectra, double floor) {
  const Eigen::MatrixXd logs = (spectra.array() + floor).log().matrix();
  return FeatureVector(RowMean(logs), FeatureKind::kSpectrogram513);
}

FeatureVector MelFromSpectra(const Eigen::MatrixXd& spectra, const Eigen::MatrixXd& filterbank,
                             double floor) {
  const Eigen::MatrixXd mel = spectra * filterbank.transpose();
  const Eigen::MatrixXd db = 20.0 * (mel.array() + floor).log10().matrix();
  return FeatureVector(RowMean(db), FeatureKind::kMel80);
}

Eigen::MatrixXd StaticMfcc(const Eigen::MatrixXd& spectra, const Eigen::MatrixXd& filterbank,
                           std::size_t n_cepstra, double floor) {
  const Eigen::MatrixXd log_mel =
      ((spectra * filterbank.transpose()).array() + floor).log().matrix();
  return DctII(log_mel, n_cepstra);
}

FeatureVector MfccFromSpectra(const Eigen::MatrixXd& spectra, const Eigen::MatrixXd& filterbank,
                              const SpectralOptions& opts) {
  const auto needed = static_cast<Eigen::Index>(2 * opts.delta_window + 1);
  Require(spectra.rows() >= needed, ErrorCode::kSignalTooShort,
          fmt::format("MFCC deltas need at least {} frames (got {})", needed, spectra.rows()));
  const Eigen::MatrixXd c = StaticMfcc(spectra, filterbank, opts.n_cepstra, opts.floor);
  const Eigen::MatrixXd d = Deltas(c, opts.delta_window);
  const Eigen::MatrixXd dd = Deltas(d, opts.delta_window);
  Eigen::MatrixXd all(c.rows(), c.cols() * 3);
  all << c, d, dd;
  return FeatureVector(RowMean(all), FeatureKind::kMfcc39);
}

FeatureVector SpectrogramFeature(const Waveform& w, const SpectralOptions& opts) {
  return LogSpectrogramFromSpectra(AmplitudeSpectra(w, opts), opts.floor);
}

FeatureVector MelSpectrogramFeature(const Waveform& w, const SpectralOptions& opts) {
  return MelFromSpectra(AmplitudeSpectra(w, opts), MelFilterbank(opts.n_mels, opts.n_fft, w.fs()),
                        opts.floor);
}

FeatureVector MfccFeature(const Waveform& w, const SpectralOptions& opts) {
  return MfccFromSpectra(AmplitudeSpectra(w, opts),
                         MelFilterbank(opts.n_mels, opts.n_fft, w.fs()), opts);
}

FeatureVector ExtractSpectralFeature(const Waveform& w, FeatureKind kind,
                                     const SpectralOptions& opts) {
  switch (kind) {
    case FeatureKind::kSpectrogram513: return SpectrogramFeature(w, opts);
    case FeatureKind::kMel80: return MelSpectrogramFeature(w, opts);
    case FeatureKind::kMfcc39: return MfccFeature(w, opts);
    case FeatureKind::kEmbedding: break;
  }
  throw Error(ErrorCode::kInvalidArgument, "embedding features are read from VQEMB1 files");
}

}  // namespace glottalkit
