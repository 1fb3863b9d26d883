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

// RBF-kernel support vector machine trained by sequential minimal
// optimization, with one-vs-one decomposition for the three voice qualities.

#ifndef GLOTTALKIT_SVM_HPP_
#define GLOTTALKIT_SVM_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "glottalkit/labels.hpp"
#include "glottalkit/matrix.hpp"

namespace glottalkit {

struct SvmConfig {
  double c = 1.0;
  // Unset selects gamma = 1 / (D * Var(X)) on the training matrix.
  std::optional<double> fixed_gamma;
  double tolerance = 1e-4;
  std::size_t max_iterations = 10'000'000;

  void Validate() const;
};

// 1 / (D * Var(X)) with the population variance over all n * D entries.
// Throws kZeroVariance or kInvalidArgument (fewer than two rows).
double ResolveGamma(const RowMatrix& x);

Eigen::MatrixXd RbfKernelMatrix(const RowMatrix& x, double gamma);
double RbfKernel(std::span<const double> u, std::span<const double> v, double gamma);

// Solution of min_a 0.5 a'Qa - e'a, 0 <= a <= C, y'a = 0 with Q_ij = y_i y_j K_ij.
struct SmoSolution {
  Eigen::VectorXd alpha;
  double rho = 0.0;             // decision(x) = sum_i alpha_i y_i K(x_i, x) - rho
  double dual_objective = 0.0;  // e'a - 0.5 a'Qa (maximized)
  std::size_t iterations = 0;
  bool converged = false;
};

// Second-order working-set selection; stops when the maximal KKT violation
// gap m(a) - M(a) drops below tolerance.
SmoSolution SolveSmo(const Eigen::MatrixXd& kernel, std::span<const double> y, double c,
                     double tolerance, std::size_t max_iterations);

struct BinarySvm {
  VoiceQuality positive = VoiceQuality::kBreathy;  // y = +1
  VoiceQuality negative = VoiceQuality::kModal;    // y = -1
  RowMatrix support_vectors;
  Eigen::VectorXd coef;                            // alpha_i * y_i
  double bias = 0.0;

  double Decision(std::span<const double> x, double gamma) const;
};

struct SvmModel {
  double gamma = 0.0;
  std::size_t dim = 0;
  std::vector<VoiceQuality> classes;  // present classes, fixed order
  std::vector<BinarySvm> machines;    // pairs (classes[i], classes[j]), i < j

  // One value per machine, in machine order.
  std::vector<double> DecisionValues(std::span<const double> x) const;
  // One-vs-one vote; ties go to the larger summed decision value, then to the
  // earlier class in fixed order. Throws kDimensionMismatch.
  VoiceQuality Predict(std::span<const double> x) const;
};

// Per machine: the training rows it saw and its full dual solution, for KKT
// auditing.
struct BinaryTrainingRecord {
  std::vector<std::size_t> rows;
  std::vector<double> y;
  SmoSolution solution;
};

struct SvmTraining {
  SvmModel model;
  std::vector<BinaryTrainingRecord> records;
};

// Throws kDegenerateLabels when fewer than two classes are present.
SvmTraining TrainSvmDetailed(const RowMatrix& x, std::span<const VoiceQuality> y,
                             const SvmConfig& cfg = {});
SvmModel TrainSvm(const RowMatrix& x, std::span<const VoiceQuality> y,
                  const SvmConfig& cfg = {});

}  // namespace glottalkit

#endif  // GLOTTALKIT_SVM_HPP_
