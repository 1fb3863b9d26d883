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

#include "glottalkit/svm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include <fmt/format.h>

#include "glottalkit/error.hpp"

namespace glottalkit {
namespace {

constexpr double kTau = 1e-12;
constexpr double kInf = std::numeric_limits<double>::infinity();

double SquaredDistance(std::span<const double> u, std::span<const double> v) {
  double acc = 0.0;
  for (std::size_t i = 0; i < u.size(); ++i) {
    const double d = u[i] - v[i];
    acc += d * d;
  }
  return acc;
}

}  // namespace

void SvmConfig::Validate() const {
  Require(c > 0.0, ErrorCode::kInvalidArgument, fmt::format("SVM C must be positive (got {})", c));
  Require(tolerance > 0.0, ErrorCode::kInvalidArgument, "SVM tolerance must be positive");
  Require(!fixed_gamma || *fixed_gamma > 0.0, ErrorCode::kInvalidArgument,
          "fixed gamma must be positive");
}

double ResolveGamma(const RowMatrix& x) {
  Require(x.rows() >= 2 && x.cols() >= 1, ErrorCode::kInvalidArgument,
          "gamma rule needs at least two training vectors");
  const double mean = x.mean();
  const double var = (x.array() - mean).square().mean();
  Require(var > 0.0, ErrorCode::kZeroVariance, "zero variance: training matrix is constant");
  return 1.0 / (static_cast<double>(x.cols()) * var);
}

double RbfKernel(std::span<const double> u, std::span<const double> v, double gamma) {
  return std::exp(-gamma * SquaredDistance(u, v));
}

Eigen::MatrixXd RbfKernelMatrix(const RowMatrix& x, double gamma) {
  const Eigen::Index n = x.rows();
  Eigen::MatrixXd k(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    k(i, i) = 1.0;
    for (Eigen::Index j = 0; j < i; ++j) {
      const double v = RbfKernel(Row(x, i), Row(x, j), gamma);
      k(i, j) = v;
      k(j, i) = v;
    }
  }
  return k;
}

SmoSolution SolveSmo(const Eigen::MatrixXd& kernel, std::span<const double> y, double c,
                     double tolerance, std::size_t max_iterations) {
  const auto n = static_cast<Eigen::Index>(y.size());
  Require(kernel.rows() == n && kernel.cols() == n, ErrorCode::kDimensionMismatch,
          "kernel matrix size differs from label count");
  SmoSolution sol;
  sol.alpha = Eigen::VectorXd::Zero(n);
  Eigen::VectorXd grad = Eigen::VectorXd::Constant(n, -1.0);  // Q alpha - e
  auto& alpha = sol.alpha;
  auto q = [&](Eigen::Index i, Eigen::Index j) { return y[i] * y[j] * kernel(i, j); };
  auto at_upper = [&](Eigen::Index i) { return alpha[i] >= c; };
  auto at_lower = [&](Eigen::Index i) { return alpha[i] <= 0.0; };

  for (; sol.iterations < max_iterations; ++sol.iterations) {
    // i maximizes -y_t G_t over I_up.
    double gmax = -kInf;
    Eigen::Index i = -1;
    for (Eigen::Index t = 0; t < n; ++t) {
      if (y[t] > 0) {
        if (!at_upper(t) && -grad[t] >= gmax) {
          gmax = -grad[t];
          i = t;
        }
      } else if (!at_lower(t) && grad[t] >= gmax) {
        gmax = grad[t];
        i = t;
      }
    }
    // j minimizes the second-order objective decrease over I_low.
    double gmax2 = -kInf;
    double best_obj = kInf;
    Eigen::Index j = -1;
    for (Eigen::Index t = 0; t < n; ++t) {
      if (y[t] > 0) {
        if (at_lower(t)) continue;
        const double diff = gmax + grad[t];
        gmax2 = std::max(gmax2, grad[t]);
        if (i >= 0 && diff > 0.0) {
          const double quad = kernel(i, i) + kernel(t, t) - 2.0 * y[i] * q(i, t);
          const double obj = -(diff * diff) / (quad > 0.0 ? quad : kTau);
          if (obj <= best_obj) {
            best_obj = obj;
            j = t;
          }
        }
      } else {
        if (at_upper(t)) continue;
        const double diff = gmax - grad[t];
        gmax2 = std::max(gmax2, -grad[t]);
        if (i >= 0 && diff > 0.0) {
          const double quad = kernel(i, i) + kernel(t, t) + 2.0 * y[i] * q(i, t);
          const double obj = -(diff * diff) / (quad > 0.0 ? quad : kTau);
          if (obj <= best_obj) {
            best_obj = obj;
            j = t;
          }
        }
      }
    }
    if (i < 0 || j < 0 || gmax + gmax2 < tolerance) {
      sol.converged = true;
      break;
    }

    const double old_i = alpha[i];
    const double old_j = alpha[j];
    if (y[i] != y[j]) {
      double quad = kernel(i, i) + kernel(j, j) + 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (-grad[i] - grad[j]) / quad;
      const double diff = alpha[i] - alpha[j];
      alpha[i] += delta;
      alpha[j] += delta;
      if (diff > 0.0) {
        if (alpha[j] < 0.0) {
          alpha[j] = 0.0;
          alpha[i] = diff;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = -diff;
      }
      if (diff > 0.0) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = c - diff;
        }
      } else if (alpha[j] > c) {
        alpha[j] = c;
        alpha[i] = c + diff;
      }
    } else {
      double quad = kernel(i, i) + kernel(j, j) - 2.0 * q(i, j);
      if (quad <= 0.0) quad = kTau;
      const double delta = (grad[i] - grad[j]) / quad;
      const double sum = alpha[i] + alpha[j];
      alpha[i] -= delta;
      alpha[j] += delta;
      if (sum > c) {
        if (alpha[i] > c) {
          alpha[i] = c;
          alpha[j] = sum - c;
        }
      } else if (alpha[j] < 0.0) {
        alpha[j] = 0.0;
        alpha[i] = sum;
      }
      if (sum > c) {
        if (alpha[j] > c) {
          alpha[j] = c;
          alpha[i] = sum - c;
        }
      } else if (alpha[i] < 0.0) {
        alpha[i] = 0.0;
        alpha[j] = sum;
      }
    }
    const double di = alpha[i] - old_i;
    const double dj = alpha[j] - old_j;
    for (Eigen::Index t = 0; t < n; ++t) grad[t] += q(t, i) * di + q(t, j) * dj;
  }

  // rho: mean of y_i G_i over free vectors, else the midpoint of the feasible range.
  double ub = kInf, lb = -kInf, sum_free = 0.0;
  std::size_t n_free = 0;
  for (Eigen::Index t = 0; t < n; ++t) {
    const double yg = y[t] * grad[t];
    if (at_upper(t)) {
      if (y[t] < 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else if (at_lower(t)) {
      if (y[t] > 0) ub = std::min(ub, yg); else lb = std::max(lb, yg);
    } else {
      ++n_free;
      sum_free += yg;
    }
  }
  sol.rho = n_free > 0 ? sum_free / static_cast<double>(n_free) : (ub + lb) / 2.0;
  // 0.5 a'Qa - e'a = 0.5 a'(G - e) since G = Qa - e.
  double primal_like = 0.0;
  for (Eigen::Index t = 0; t < n; ++t) primal_like += alpha[t] * (grad[t] - 1.0);
  sol.dual_objective = -0.5 * primal_like;
  return sol;
}

double BinarySvm::Decision(std::span<const double> x, double gamma) const {
  double acc = bias;
  for (Eigen::Index i = 0; i < support_vectors.rows(); ++i) {
    acc += coef[i] * RbfKernel(Row(support_vectors, i), x, gamma);
  }
  return acc;
}

std::vector<double> SvmModel::DecisionValues(std::span<const double> x) const {
  Require(x.size() == dim, ErrorCode::kDimensionMismatch,
          fmt::format("SVM expects {}-dimensional input, got {}", dim, x.size()));
  std::vector<double> out;
  out.reserve(machines.size());
  for (const auto& m : machines) out.push_back(m.Decision(x, gamma));
  return out;
}

VoiceQuality SvmModel::Predict(std::span<const double> x) const {
  const std::vector<double> d = DecisionValues(x);
  std::array<int, kNumQualities> votes{};
  std::array<double, kNumQualities> score{};
  for (std::size_t m = 0; m < machines.size(); ++m) {
    const auto pos = Index(machines[m].positive);
    const auto neg = Index(machines[m].negative);
    if (d[m] > 0.0) ++votes[pos];
    if (d[m] < 0.0) ++votes[neg];
    score[pos] += d[m];
    score[neg] -= d[m];
  }
  VoiceQuality best = classes.front();
  for (VoiceQuality q : classes) {
    const auto i = Index(q), b = Index(best);
    if (votes[i] > votes[b] || (votes[i] == votes[b] && score[i] > score[b])) best = q;
  }
  return best;
}

SvmTraining TrainSvmDetailed(const RowMatrix& x, std::span<const VoiceQuality> y,
                             const SvmConfig& cfg) {
  cfg.Validate();
  Require(static_cast<std::size_t>(x.rows()) == y.size(), ErrorCode::kDimensionMismatch,
          "feature and label counts differ");
  Require(x.rows() >= 2, ErrorCode::kInvalidArgument, "SVM training needs at least two vectors");

  SvmTraining out;
  SvmModel& model = out.model;
  model.dim = static_cast<std::size_t>(x.cols());
  for (VoiceQuality q : kAllQualities) {
    if (std::find(y.begin(), y.end(), q) != y.end()) model.classes.push_back(q);
  }
  Require(model.classes.size() >= 2, ErrorCode::kDegenerateLabels,
          "degenerate input: SVM training needs at least two classes");
  model.gamma = cfg.fixed_gamma ? *cfg.fixed_gamma : ResolveGamma(x);
  const Eigen::MatrixXd full_kernel = RbfKernelMatrix(x, model.gamma);

  for (std::size_t a = 0; a < model.classes.size(); ++a) {
    for (std::size_t b = a + 1; b < model.classes.size(); ++b) {
      BinaryTrainingRecord rec;
      for (std::size_t i = 0; i < y.size(); ++i) {
        if (y[i] == model.classes[a] || y[i] == model.classes[b]) {
          rec.rows.push_back(i);
          rec.y.push_back(y[i] == model.classes[a] ? 1.0 : -1.0);
        }
      }
      const auto m = static_cast<Eigen::Index>(rec.rows.size());
      Eigen::MatrixXd k(m, m);
      for (Eigen::Index i = 0; i < m; ++i) {
        for (Eigen::Index j = 0; j < m; ++j) {
          k(i, j) = full_kernel(static_cast<Eigen::Index>(rec.rows[i]),
                                static_cast<Eigen::Index>(rec.rows[j]));
        }
      }
      rec.solution = SolveSmo(k, rec.y, cfg.c, cfg.tolerance, cfg.max_iterations);

      BinarySvm machine;
      machine.positive = model.classes[a];
      machine.negative = model.classes[b];
      machine.bias = -rec.solution.rho;
      std::vector<Eigen::Index> sv;
      for (Eigen::Index i = 0; i < m; ++i) {
        if (rec.solution.alpha[i] > 0.0) sv.push_back(i);
      }
      machine.support_vectors.resize(static_cast<Eigen::Index>(sv.size()), x.cols());
      machine.coef.resize(static_cast<Eigen::Index>(sv.size()));
      for (std::size_t s = 0; s < sv.size(); ++s) {
        const auto row = static_cast<Eigen::Index>(rec.rows[static_cast<std::size_t>(sv[s])]);
        machine.support_vectors.row(static_cast<Eigen::Index>(s)) = x.row(row);
        machine.coef[static_cast<Eigen::Index>(s)] =
            rec.solution.alpha[sv[s]] * rec.y[static_cast<std::size_t>(sv[s])];
      }
      model.machines.push_back(std::move(machine));
      out.records.push_back(std::move(rec));
    }
  }
  return out;
}

SvmModel TrainSvm(const RowMatrix& x, std::span<const VoiceQuality> y, const SvmConfig& cfg) {
  return TrainSvmDetailed(x, y, cfg).model;
}

}  // namespace glottalkit
