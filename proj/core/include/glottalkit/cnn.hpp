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

// Small 1-D convolutional classifier with hand-written backpropagation:
//
//   input (1 x D, zero-padded to D' = next multiple of 8)
//   3 x [conv k=3 stride=2 pad=1 -> batch norm -> ReLU], channels 8, 16, 32
//   flatten (32 * D'/8) -> dense 16 -> ReLU -> dense 3 -> softmax
//
// Trained with Adam on mean cross-entropy; early stopping on validation loss.

#ifndef GLOTTALKIT_CNN_HPP_
#define GLOTTALKIT_CNN_HPP_

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "glottalkit/labels.hpp"
#include "glottalkit/matrix.hpp"

namespace glottalkit {

struct CnnConfig {
  std::array<std::size_t, 3> filters{8, 16, 32};
  std::size_t kernel = 3;
  std::size_t stride = 2;
  std::size_t hidden = 16;
  double learning_rate = 0.001;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double adam_epsilon = 1e-8;
  std::size_t batch_size = 64;
  std::size_t max_epochs = 100;
  std::size_t patience = 20;  // 0 disables early stopping
  double bn_momentum = 0.9;   // running = momentum * running + (1 - momentum) * batch
  double bn_epsilon = 1e-5;
  std::uint64_t seed = 0;

  void Validate() const;
};

enum class BatchNormMode { kTraining, kInference };

// Offsets of every parameter block inside the flat parameter vector.
struct CnnLayout {
  std::size_t input_dim = 0;
  std::size_t padded_dim = 0;
  std::array<std::size_t, 4> channels{};
  std::array<std::size_t, 4> lengths{};
  std::size_t kernel = 3;
  std::size_t hidden = 16;
  std::array<std::size_t, 3> conv_w{}, conv_b{}, bn_gamma{}, bn_beta{};
  std::size_t fc1_w = 0, fc1_b = 0, fc2_w = 0, fc2_b = 0;
  std::size_t n_params = 0;

  std::size_t flatten_width() const { return channels[3] * lengths[3]; }
  static CnnLayout Make(std::size_t input_dim, const CnnConfig& cfg);
};

// D rounded up to a multiple of 8.
std::size_t PaddedInputDim(std::size_t d);

class CnnModel {
 public:
  CnnModel() = default;
  // He-uniform weights, zero biases, unit BN scale; deterministic in seed.
  static CnnModel Create(std::size_t input_dim, const CnnConfig& cfg);

  const CnnLayout& layout() const { return layout_; }
  std::size_t input_dim() const { return layout_.input_dim; }
  std::size_t flatten_width() const { return layout_.flatten_width(); }
  double bn_epsilon() const { return bn_epsilon_; }

  std::vector<double>& parameters() { return params_; }
  const std::vector<double>& parameters() const { return params_; }
  // Per conv layer: running mean then running variance, each channels[l+1] long.
  std::vector<double>& running_stats() { return running_; }
  const std::vector<double>& running_stats() const { return running_; }

  // Softmax rows (n x 3).
  RowMatrix Probabilities(const RowMatrix& x, BatchNormMode mode = BatchNormMode::kInference) const;
  VoiceQuality Predict(std::span<const double> x) const;

  double Loss(const RowMatrix& x, std::span<const VoiceQuality> y,
              BatchNormMode mode = BatchNormMode::kInference) const;

  // Training-mode loss and its gradient w.r.t. parameters(). When momentum is
  // given, the running statistics are updated with the batch moments.
  double LossAndGradient(const RowMatrix& x, std::span<const VoiceQuality> y,
                         std::vector<double>& grad, const double* momentum = nullptr);

  // Rebuilds a model from stored parts; throws kDimensionMismatch.
  static CnnModel FromParts(std::size_t input_dim, const CnnConfig& cfg, std::vector<double> params,
                            std::vector<double> running);

 private:
  struct Pass;
  void Forward(const RowMatrix& x, BatchNormMode mode, Pass& pass) const;

  CnnLayout layout_;
  double bn_epsilon_ = 1e-5;
  std::vector<double> params_;
  std::vector<double> running_;
};

struct CnnTraining {
  CnnModel model;
  std::vector<double> train_loss;  // mean mini-batch loss per epoch
  std::vector<double> val_loss;
  std::size_t best_epoch = 0;
};

// Throws kInvalidArgument (D < 8, empty sets), kEmptyInput (no validation data)
// or kDivergence (non-finite loss).
CnnTraining TrainCnn(const RowMatrix& x, std::span<const VoiceQuality> y, const RowMatrix& x_val,
                     std::span<const VoiceQuality> y_val, const CnnConfig& cfg = {});

}  // namespace glottalkit

#endif  // GLOTTALKIT_CNN_HPP_
