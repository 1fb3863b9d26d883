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

// Utterance-level spectral features: time-averaged log amplitude spectrum
// (513), time-averaged mel spectrum in dB (80) and MFCC with deltas (39).
// The log/dB nonlinearity is applied per frame, before averaging.

#ifndef GLOTTALKIT_SPECTRAL_HPP_
#define GLOTTALKIT_SPECTRAL_HPP_

#include <cstddef>
#include <vector>

#include <Eigen/Core>

#include "glottalkit/features.hpp"
#include "glottalkit/signal.hpp"

namespace glottalkit {

inline constexpr double kLogFloor = 1e-10;

struct SpectralOptions {
  FrameSpec frame{25.0, 5.0, WindowKind::kHamming};
  std::size_t n_fft = 1024;
  std::size_t n_mels = 80;
  std::size_t n_cepstra = 13;
  int delta_window = 2;
  bool pre_emphasize = false;
  double floor = kLogFloor;
};

double HzToMel(double hz);
double MelToHz(double mel);

// n_filters + 2 band edges equally spaced in mel from 0 to fs/2; the returned
// centers are the inner n_filters edges.
std::vector<double> MelCenterFrequencies(std::size_t n_filters, double fs);

// n_filters x (n_fft/2 + 1) triangular filters of unit peak height. Throws
// kInvalidArgument when some filter covers no FFT bin.
Eigen::MatrixXd MelFilterbank(std::size_t n_filters, std::size_t n_fft, double fs);

// frames x (n_fft/2 + 1) amplitude spectra of Hamming-windowed frames.
Eigen::MatrixXd AmplitudeSpectra(const Waveform& w, const SpectralOptions& opts = {});

// Orthonormal DCT-II of each row, keeping the first n_coeffs outputs.
Eigen::MatrixXd DctII(const Eigen::MatrixXd& rows, std::size_t n_coeffs);

// Regression deltas over +/- window frames with edge replication.
Eigen::MatrixXd Deltas(const Eigen::MatrixXd& frames, int window);

// Frame-level stages, exposed so the averaging can be checked directly.
FeatureVector LogSpectrogramFromSpectra(const Eigen::MatrixXd& spectra, double floor = kLogFloor);
FeatureVector MelFromSpectra(const Eigen::MatrixXd& spectra, const Eigen::MatrixXd& filterbank,
                             double floor = kLogFloor);
// frames x n_cepstra static MFCCs from natural-log mel energies.
Eigen::MatrixXd StaticMfcc(const Eigen::MatrixXd& spectra, const Eigen::MatrixXd& filterbank,
                           std::size_t n_cepstra, double floor = kLogFloor);
FeatureVector MfccFromSpectra(const Eigen::MatrixXd& spectra, const Eigen::MatrixXd& filterbank,
                              const SpectralOptions& opts = {});

FeatureVector SpectrogramFeature(const Waveform& w, const SpectralOptions& opts = {});
FeatureVector MelSpectrogramFeature(const Waveform& w, const SpectralOptions& opts = {});
// Throws kSignalTooShort with fewer than 2 * delta_window + 1 frames.
FeatureVector MfccFeature(const Waveform& w, const SpectralOptions& opts = {});

// Dispatch for the three spectral kinds; kEmbedding is rejected.
FeatureVector ExtractSpectralFeature(const Waveform& w, FeatureKind kind,
                                     const SpectralOptions& opts = {});

}  // namespace glottalkit

#endif  // GLOTTALKIT_SPECTRAL_HPP_
