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

#include "glottalkit/cnn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>

#include <fmt/format.h>

#include "glottalkit/error.hpp"

namespace glottalkit {

void CnnConfig::Validate() const {
  for (auto f : filters) Require(f > 0, ErrorCode::kInvalidArgument, "CNN filter counts must be positive");
  Require(kernel == 3 && stride == 2, ErrorCode::kInvalidArgument,
          "CNN layout is fixed to kernel 3, stride 2");
  Require(hidden > 0 && batch_size > 0 && max_epochs > 0, ErrorCode::kInvalidArgument,
          "CNN sizes must be positive");
  Require(learning_rate > 0.0, ErrorCode::kInvalidArgument, "learning rate must be positive");
}

std::size_t PaddedInputDim(std::size_t d) { return (d + 7) / 8 * 8; }

CnnLayout CnnLayout::Make(std::size_t input_dim, const CnnConfig& cfg) {
  cfg.Validate();
  Require(input_dim >= 8, ErrorCode::kInvalidArgument,
          fmt::format("CNN input dimension must be >= 8 (got {})", input_dim));
  CnnLayout l;
  l.input_dim = input_dim;
  l.padded_dim = PaddedInputDim(input_dim);
  l.kernel = cfg.kernel;
  l.hidden = cfg.hidden;
  l.channels = {1, cfg.filters[0], cfg.filters[1], cfg.filters[2]};
  l.lengths[0] = l.padded_dim;
  // pad 1, kernel 3, stride 2 on an even length halves it.
  for (int i = 1; i < 4; ++i) l.lengths[i] = l.lengths[i - 1] / 2;
  std::size_t off = 0;
  for (int i = 0; i < 3; ++i) {
    l.conv_w[i] = off;
    off += l.channels[i + 1] * l.channels[i] * l.kernel;
    l.conv_b[i] = off;
    off += l.channels[i + 1];
    l.bn_gamma[i] = off;
    off += l.channels[i + 1];
    l.bn_beta[i] = off;
    off += l.channels[i + 1];
  }
  l.fc1_w = off;
  off += l.hidden * l.flatten_width();
  l.fc1_b = off;
  off += l.hidden;
  l.fc2_w = off;
  off += kNumQualities * l.hidden;
  l.fc2_b = off;
  off += kNumQualities;
  l.n_params = off;
  return l;
}

namespace {

// Uniform double in [0, 1) from the top 53 bits; fixed across standard libraries.
double Uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

std::size_t RunningOffset(const CnnLayout& l, int layer) {
  std::size_t off = 0;
  for (int i = 0; i < layer; ++i) off += 2 * l.channels[i + 1];
  return off;
}

std::size_t RunningSize(const CnnLayout& l) { return RunningOffset(l, 3); }

}  // namespace

CnnModel CnnModel::Create(std::size_t input_dim, const CnnConfig& cfg) {
  CnnModel m;
  m.layout_ = CnnLayout::Make(input_dim, cfg);
  m.bn_epsilon_ = cfg.bn_epsilon;
  const CnnLayout& l = m.layout_;
  m.params_.assign(l.n_params, 0.0);
  std::mt19937_64 rng(cfg.seed);
  auto he_uniform = [&](std::size_t offset, std::size_t count, std::size_t fan_in) {
    const double limit = std::sqrt(6.0 / static_cast<double>(fan_in));
    for (std::size_t i = 0; i < count; ++i) m.params_[offset + i] = (2.0 * Uniform01(rng) - 1.0) * limit;
  };
  for (int i = 0; i < 3; ++i) {
    he_uniform(l.conv_w[i], l.channels[i + 1] * l.channels[i] * l.kernel, l.channels[i] * l.kernel);
    std::fill_n(m.params_.begin() + static_cast<std::ptrdiff_t>(l.bn_gamma[i]), l.channels[i + 1], 1.0);
  }
  he_uniform(l.fc1_w, l.hidden * l.flatten_width(), l.flatten_width());
  he_uniform(l.fc2_w, kNumQualities * l.hidden, l.hidden);

  m.running_.assign(RunningSize(l), 0.0);
  for (int i = 0; i < 3; ++i) {
    const std::size_t c = l.channels[i + 1];
    std::fill_n(m.running_.begin() + static_cast<std::ptrdiff_t>(RunningOffset(l, i) + c), c, 1.0);
  }
  return m;
}

CnnModel CnnModel::FromParts(std::size_t input_dim, const CnnConfig& cfg, std::vector<double> params,
                             std::vector<double> running) {
  CnnModel m;
  m.layout_ = CnnLayout::Make(input_dim, cfg);
  m.bn_epsilon_ = cfg.bn_epsilon;
  Require(params.size() == m.layout_.n_params && running.size() == RunningSize(m.layout_),
          ErrorCode::kDimensionMismatch, "CNN parameter blocks do not match the layout");
  m.params_ = std::move(params);
  m.running_ = std::move(running);
  return m;
}

struct CnnModel::Pass {
  std::size_t batch = 0;
  // Per conv layer l: input, BN-normalized output xhat, post-affine z, and
  // per-channel batch moments.
  std::array<std::vector<double>, 4> act;
  std::array<std::vector<double>, 3> xhat;
  std::array<std::vector<double>, 3> z;
  std::array<std::vector<double>, 3> mean;
  std::array<std::vector<double>, 3> var;
  std::vector<double> h_pre, h, logits, probs;
};

void CnnModel::Forward(const RowMatrix& x, BatchNormMode mode, Pass& p) const {
  const CnnLayout& l = layout_;
  Require(static_cast<std::size_t>(x.cols()) == l.input_dim, ErrorCode::kDimensionMismatch,
          fmt::format("CNN expects {}-dimensional input, got {}", l.input_dim, x.cols()));
  const auto nb = static_cast<std::size_t>(x.rows());
  p.batch = nb;
  const double* w = params_.data();

  p.act[0].assign(nb * l.padded_dim, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    std::copy_n(x.data() + b * l.input_dim, l.input_dim, p.act[0].data() + b * l.padded_dim);
  }

  for (int layer = 0; layer < 3; ++layer) {
    const std::size_t cin = l.channels[layer], cout = l.channels[layer + 1];
    const std::size_t lin = l.lengths[layer], lout = l.lengths[layer + 1];
    const auto& in = p.act[layer];
    auto& y = p.xhat[layer];
    y.assign(nb * cout * lout, 0.0);
    const double* kw = w + l.conv_w[layer];
    const double* kb = w + l.conv_b[layer];
    for (std::size_t b = 0; b < nb; ++b) {
      for (std::size_t o = 0; o < cout; ++o) {
        double* dst = y.data() + (b * cout + o) * lout;
        for (std::size_t t = 0; t < lout; ++t) {
          double acc = kb[o];
          for (std::size_t c = 0; c < cin; ++c) {
            const double* src = in.data() + (b * cin + c) * lin;
            const double* k = kw + (o * cin + c) * l.kernel;
            for (std::size_t j = 0; j < l.kernel; ++j) {
              const std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(2 * t + j) - 1;
              if (pos >= 0 && pos < static_cast<std::ptrdiff_t>(lin)) acc += k[j] * src[pos];
            }
          }
          dst[t] = acc;
        }
      }
    }

    auto& mean = p.mean[layer];
    auto& var = p.var[layer];
    mean.assign(cout, 0.0);
    var.assign(cout, 0.0);
    const std::size_t count = nb * lout;
    if (mode == BatchNormMode::kTraining) {
      for (std::size_t o = 0; o < cout; ++o) {
        double s = 0.0;
        for (std::size_t b = 0; b < nb; ++b) {
          const double* r = y.data() + (b * cout + o) * lout;
          for (std::size_t t = 0; t < lout; ++t) s += r[t];
        }
        mean[o] = s / static_cast<double>(count);
        double v = 0.0;
        for (std::size_t b = 0; b < nb; ++b) {
          const double* r = y.data() + (b * cout + o) * lout;
          for (std::size_t t = 0; t < lout; ++t) v += (r[t] - mean[o]) * (r[t] - mean[o]);
        }
        var[o] = v / static_cast<double>(count);
      }
    } else {
      const std::size_t off = RunningOffset(l, layer);
      for (std::size_t o = 0; o < cout; ++o) {
        mean[o] = running_[off + o];
        var[o] = running_[off + cout + o];
      }
    }

    const double* gamma = w + l.bn_gamma[layer];
    const double* beta = w + l.bn_beta[layer];
    auto& z = p.z[layer];
    z.resize(y.size());
    auto& next = p.act[layer + 1];
    next.resize(y.size());
    for (std::size_t b = 0; b < nb; ++b) {
      for (std::size_t o = 0; o < cout; ++o) {
        const double inv_std = 1.0 / std::sqrt(var[o] + bn_epsilon_);
        const std::size_t base = (b * cout + o) * lout;
        for (std::size_t t = 0; t < lout; ++t) {
          const double xh = (y[base + t] - mean[o]) * inv_std;
          y[base + t] = xh;
          z[base + t] = gamma[o] * xh + beta[o];
          next[base + t] = std::max(0.0, z[base + t]);
        }
      }
    }
  }

  const std::size_t f = l.flatten_width();
  const double* w1 = w + l.fc1_w;
  const double* b1 = w + l.fc1_b;
  const double* w2 = w + l.fc2_w;
  const double* b2 = w + l.fc2_b;
  p.h_pre.assign(nb * l.hidden, 0.0);
  p.h.assign(nb * l.hidden, 0.0);
  p.logits.assign(nb * kNumQualities, 0.0);
  p.probs.assign(nb * kNumQualities, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    const double* in = p.act[3].data() + b * f;
    for (std::size_t u = 0; u < l.hidden; ++u) {
      double acc = b1[u];
      const double* row = w1 + u * f;
      for (std::size_t i = 0; i < f; ++i) acc += row[i] * in[i];
      p.h_pre[b * l.hidden + u] = acc;
      p.h[b * l.hidden + u] = std::max(0.0, acc);
    }
    double peak = -std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k < kNumQualities; ++k) {
      double acc = b2[k];
      for (std::size_t u = 0; u < l.hidden; ++u) acc += w2[k * l.hidden + u] * p.h[b * l.hidden + u];
      p.logits[b * kNumQualities + k] = acc;
      peak = std::max(peak, acc);
    }
    double total = 0.0;
    for (std::size_t k = 0; k < kNumQualities; ++k) {
      const double e = std::exp(p.logits[b * kNumQualities + k] - peak);
      p.probs[b * kNumQualities + k] = e;
      total += e;
    }
    for (std::size_t k = 0; k < kNumQualities; ++k) p.probs[b * kNumQualities + k] /= total;
  }
}

RowMatrix CnnModel::Probabilities(const RowMatrix& x, BatchNormMode mode) const {
  Pass p;
  Forward(x, mode, p);
  RowMatrix out(x.rows(), static_cast<Eigen::Index>(kNumQualities));
  std::copy(p.probs.begin(), p.probs.end(), out.data());
  return out;
}

VoiceQuality CnnModel::Predict(std::span<const double> x) const {
  RowMatrix one(1, static_cast<Eigen::Index>(x.size()));
  std::copy(x.begin(), x.end(), one.data());
  const RowMatrix prob = Probabilities(one);
  Eigen::Index best = 0;
  for (Eigen::Index k = 1; k < prob.cols(); ++k) {
    if (prob(0, k) > prob(0, best)) best = k;
  }
  return static_cast<VoiceQuality>(best);
}

namespace {

double CrossEntropy(std::span<const double> probs, std::span<const VoiceQuality> y) {
  double loss = 0.0;
  for (std::size_t b = 0; b < y.size(); ++b) {
    loss -= std::log(std::max(probs[b * kNumQualities + Index(y[b])],
                              std::numeric_limits<double>::min()));
  }
  return loss / static_cast<double>(y.size());
}

}  // namespace

double CnnModel::Loss(const RowMatrix& x, std::span<const VoiceQuality> y, BatchNormMode mode) const {
  Require(static_cast<std::size_t>(x.rows()) == y.size() && !y.empty(),
          ErrorCode::kDimensionMismatch, "CNN loss needs one label per row");
  Pass p;
  Forward(x, mode, p);
  return CrossEntropy(p.probs, y);
}

double CnnModel::LossAndGradient(const RowMatrix& x, std::span<const VoiceQuality> y,
                                 std::vector<double>& grad, const double* momentum) {
  Require(static_cast<std::size_t>(x.rows()) == y.size() && !y.empty(),
          ErrorCode::kDimensionMismatch, "CNN loss needs one label per row");
  const CnnLayout& l = layout_;
  Pass p;
  Forward(x, BatchNormMode::kTraining, p);
  const double loss = CrossEntropy(p.probs, y);
  const std::size_t nb = p.batch;
  const double* w = params_.data();
  grad.assign(l.n_params, 0.0);
  double* g = grad.data();

  // Softmax + cross-entropy.
  std::vector<double> dlogits(p.probs);
  for (std::size_t b = 0; b < nb; ++b) dlogits[b * kNumQualities + Index(y[b])] -= 1.0;
  for (double& v : dlogits) v /= static_cast<double>(nb);

  const std::size_t f = l.flatten_width();
  std::vector<double> dh(nb * l.hidden, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    for (std::size_t k = 0; k < kNumQualities; ++k) {
      const double d = dlogits[b * kNumQualities + k];
      g[l.fc2_b + k] += d;
      for (std::size_t u = 0; u < l.hidden; ++u) {
        g[l.fc2_w + k * l.hidden + u] += d * p.h[b * l.hidden + u];
        dh[b * l.hidden + u] += d * w[l.fc2_w + k * l.hidden + u];
      }
    }
  }
  std::vector<double> dact(nb * f, 0.0);
  for (std::size_t b = 0; b < nb; ++b) {
    const double* in = p.act[3].data() + b * f;
    for (std::size_t u = 0; u < l.hidden; ++u) {
      if (p.h_pre[b * l.hidden + u] <= 0.0) continue;
      const double d = dh[b * l.hidden + u];
      g[l.fc1_b + u] += d;
      double* gw = g + l.fc1_w + u * f;
      const double* row = w + l.fc1_w + u * f;
      double* da = dact.data() + b * f;
      for (std::size_t i = 0; i < f; ++i) {
        gw[i] += d * in[i];
        da[i] += d * row[i];
      }
    }
  }

  for (int layer = 2; layer >= 0; --layer) {
    const std::size_t cin = l.channels[layer], cout = l.channels[layer + 1];
    const std::size_t lin = l.lengths[layer], lout = l.lengths[layer + 1];
    const std::size_t count = nb * lout;
    const auto& z = p.z[layer];
    const auto& xh = p.xhat[layer];
    const double* gamma = w + l.bn_gamma[layer];

    // ReLU, then batch-norm backward in training mode.
    std::vector<double> dz(dact.size());
    for (std::size_t i = 0; i < dz.size(); ++i) dz[i] = z[i] > 0.0 ? dact[i] : 0.0;
    std::vector<double> dy(dz.size());
    for (std::size_t o = 0; o < cout; ++o) {
      double sum_dz = 0.0, sum_dz_xh = 0.0;
      for (std::size_t b = 0; b < nb; ++b) {
        const std::size_t base = (b * cout + o) * lout;
        for (std::size_t t = 0; t < lout; ++t) {
          sum_dz += dz[base + t];
          sum_dz_xh += dz[base + t] * xh[base + t];
        }
      }
      g[l.bn_beta[layer] + o] += sum_dz;
      g[l.bn_gamma[layer] + o] += sum_dz_xh;
      const double inv_std = 1.0 / std::sqrt(p.var[layer][o] + bn_epsilon_);
      const double n = static_cast<double>(count);
      // dxhat = gamma * dz, so the sums above scale by gamma.
      const double scale = gamma[o] * inv_std / n;
      for (std::size_t b = 0; b < nb; ++b) {
        const std::size_t base = (b * cout + o) * lout;
        for (std::size_t t = 0; t < lout; ++t) {
          dy[base + t] = scale * (n * dz[base + t] - sum_dz - xh[base + t] * sum_dz_xh);
        }
      }
    }

    const auto& in = p.act[layer];
    const double* kw = w + l.conv_w[layer];
    double* gkw = g + l.conv_w[layer];
    double* gkb = g + l.conv_b[layer];
    std::vector<double> din(layer > 0 ? nb * cin * lin : 0, 0.0);
    for (std::size_t b = 0; b < nb; ++b) {
      for (std::size_t o = 0; o < cout; ++o) {
        const double* d = dy.data() + (b * cout + o) * lout;
        for (std::size_t t = 0; t < lout; ++t) {
          gkb[o] += d[t];
          for (std::size_t c = 0; c < cin; ++c) {
            const double* src = in.data() + (b * cin + c) * lin;
            for (std::size_t j = 0; j < l.kernel; ++j) {
              const std::ptrdiff_t pos = static_cast<std::ptrdiff_t>(2 * t + j) - 1;
              if (pos < 0 || pos >= static_cast<std::ptrdiff_t>(lin)) continue;
              gkw[(o * cin + c) * l.kernel + j] += d[t] * src[pos];
              if (layer > 0) din[(b * cin + c) * lin + static_cast<std::size_t>(pos)] +=
                  d[t] * kw[(o * cin + c) * l.kernel + j];
            }
          }
        }
      }
    }
    dact = std::move(din);
  }

  if (momentum != nullptr) {
    const double m = *momentum;
    for (int layer = 0; layer < 3; ++layer) {
      const std::size_t cout = l.channels[layer + 1];
      const std::size_t count = nb * l.lengths[layer + 1];
      const double unbias = count > 1 ? static_cast<double>(count) / static_cast<double>(count - 1) : 1.0;
      const std::size_t off = RunningOffset(l, layer);
      for (std::size_t o = 0; o < cout; ++o) {
        running_[off + o] = m * running_[off + o] + (1.0 - m) * p.mean[layer][o];
        running_[off + cout + o] = m * running_[off + cout + o] + (1.0 - m) * p.var[layer][o] * unbias;
      }
    }
  }
  return loss;
}

CnnTraining TrainCnn(const RowMatrix& x, std::span<const VoiceQuality> y, const RowMatrix& x_val,
                     std::span<const VoiceQuality> y_val, const CnnConfig& cfg) {
  cfg.Validate();
  Require(x.rows() >= 1 && static_cast<std::size_t>(x.rows()) == y.size(),
          ErrorCode::kInvalidArgument, "CNN training needs one label per training row");
  Require(x_val.rows() >= 1 && !y_val.empty(), ErrorCode::kEmptyInput,
          "CNN training needs a non-empty validation set");
  Require(static_cast<std::size_t>(x_val.rows()) == y_val.size() && x_val.cols() == x.cols(),
          ErrorCode::kDimensionMismatch, "validation set shape differs from training set");

  CnnTraining out;
  CnnModel model = CnnModel::Create(static_cast<std::size_t>(x.cols()), cfg);
  const std::size_t np = model.parameters().size();
  std::vector<double> m1(np, 0.0), m2(np, 0.0), grad;
  std::mt19937_64 rng(cfg.seed ^ 0x9E3779B97F4A7C15ULL);
  std::vector<std::size_t> order(static_cast<std::size_t>(x.rows()));
  std::iota(order.begin(), order.end(), 0);

  double best_val = std::numeric_limits<double>::infinity();
  CnnModel best = model;
  std::size_t since_best = 0;
  std::size_t step = 0;

  for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
    for (std::size_t i = order.size(); i > 1; --i) {
      std::swap(order[i - 1], order[static_cast<std::size_t>(rng() % i)]);
    }
    double epoch_loss = 0.0;
    std::size_t batches = 0;
    for (std::size_t start = 0; start < order.size(); start += cfg.batch_size) {
      const std::size_t stop = std::min(order.size(), start + cfg.batch_size);
      RowMatrix xb(static_cast<Eigen::Index>(stop - start), x.cols());
      std::vector<VoiceQuality> yb;
      for (std::size_t i = start; i < stop; ++i) {
        xb.row(static_cast<Eigen::Index>(i - start)) = x.row(static_cast<Eigen::Index>(order[i]));
        yb.push_back(y[order[i]]);
      }
      const double loss = model.LossAndGradient(xb, yb, grad, &cfg.bn_momentum);
      Require(std::isfinite(loss), ErrorCode::kDivergence,
              fmt::format("non-finite training loss at epoch {}", epoch));
      ++step;
      const double c1 = 1.0 - std::pow(cfg.beta1, static_cast<double>(step));
      const double c2 = 1.0 - std::pow(cfg.beta2, static_cast<double>(step));
      auto& params = model.parameters();
      for (std::size_t k = 0; k < np; ++k) {
        m1[k] = cfg.beta1 * m1[k] + (1.0 - cfg.beta1) * grad[k];
        m2[k] = cfg.beta2 * m2[k] + (1.0 - cfg.beta2) * grad[k] * grad[k];
        params[k] -= cfg.learning_rate * (m1[k] / c1) / (std::sqrt(m2[k] / c2) + cfg.adam_epsilon);
      }
      epoch_loss += loss;
      ++batches;
    }
    out.train_loss.push_back(epoch_loss / static_cast<double>(batches));
    const double val = model.Loss(x_val, y_val, BatchNormMode::kInference);
    Require(std::isfinite(val), ErrorCode::kDivergence,
            fmt::format("non-finite validation loss at epoch {}", epoch));
    out.val_loss.push_back(val);
    if (val < best_val) {
      best_val = val;
      best = model;
      out.best_epoch = epoch;
      since_best = 0;
    } else if (cfg.patience > 0 && ++since_best >= cfg.patience) {
      break;
    }
  }
  out.model = std::move(best);
  return out;
}

}  // namespace glottalkit
