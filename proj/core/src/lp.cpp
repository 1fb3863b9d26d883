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

#include "glottalkit/lp.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <fmt/format.h>

#include "glottalkit/error.hpp"

namespace glottalkit {
namespace {

constexpr double kMinReciprocalCondition = 1e-13;

void CheckFrame(std::span<const double> frame, std::size_t order) {
  Require(frame.size() > order, ErrorCode::kInvalidArgument,
          fmt::format("LP frame of {} samples is too short for order {}", frame.size(), order));
}

}  // namespace

VocalTractFilter WeightedLinearPrediction(std::span<const double> frame,
                                          std::span<const double> weights, std::size_t order) {
  CheckFrame(frame, order);
  Require(weights.size() == frame.size(), ErrorCode::kInvalidArgument,
          fmt::format("weight length {} differs from frame length {}", weights.size(),
                      frame.size()));
  for (double v : weights) {
    Require(v > 0.0 && std::isfinite(v), ErrorCode::kInvalidArgument,
            "LP weights must be finite and strictly positive");
  }
  const auto p = static_cast<Eigen::Index>(order);
  if (p == 0) return {};

  // R[j][k] = sum_n w[n] s[n-j] s[n-k], r[j] = sum_n w[n] s[n] s[n-j], j,k = 1..p.
  Eigen::MatrixXd r_mat = Eigen::MatrixXd::Zero(p, p);
  Eigen::VectorXd r_vec = Eigen::VectorXd::Zero(p);
  Eigen::VectorXd lagged(p);
  for (std::size_t n = order; n < frame.size(); ++n) {
    for (Eigen::Index k = 0; k < p; ++k) lagged[k] = frame[n - 1 - static_cast<std::size_t>(k)];
    r_mat.selfadjointView<Eigen::Lower>().rankUpdate(lagged, weights[n]);
    r_vec.noalias() += (weights[n] * frame[n]) * lagged;
  }
  r_mat = r_mat.selfadjointView<Eigen::Lower>();

  Eigen::LLT<Eigen::MatrixXd> llt(r_mat);
  Require(r_mat.trace() > 0.0 && llt.info() == Eigen::Success &&
              llt.rcond() > kMinReciprocalCondition,
          ErrorCode::kDegenerateFrame, "degenerate frame: singular normal equations");
  const Eigen::VectorXd a = llt.solve(-r_vec);
  VocalTractFilter f;
  f.a.assign(a.data(), a.data() + p);
  for (double v : f.a) {
    Require(std::isfinite(v), ErrorCode::kDegenerateFrame, "degenerate frame: non-finite LP solution");
  }
  return f;
}

VocalTractFilter CovarianceLinearPrediction(std::span<const double> frame, std::size_t order) {
  CheckFrame(frame, order);
  const auto p = static_cast<Eigen::Index>(order);
  if (p == 0) return {};
  const auto rows = static_cast<Eigen::Index>(frame.size() - order);
  Eigen::MatrixXd data(rows, p);
  Eigen::VectorXd target(rows);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const std::size_t n = order + static_cast<std::size_t>(i);
    for (Eigen::Index k = 0; k < p; ++k) data(i, k) = frame[n - 1 - static_cast<std::size_t>(k)];
    target[i] = -frame[n];
  }
  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(data);
  Require(qr.rank() == p, ErrorCode::kDegenerateFrame, "degenerate frame: rank-deficient data matrix");
  const Eigen::VectorXd a = qr.solve(target);
  VocalTractFilter f;
  f.a.assign(a.data(), a.data() + p);
  return f;
}

std::vector<std::complex<double>> FilterRoots(const VocalTractFilter& f) {
  const auto p = static_cast<Eigen::Index>(f.order());
  if (p == 0) return {};
  Eigen::MatrixXd companion = Eigen::MatrixXd::Zero(p, p);
  for (Eigen::Index k = 0; k < p; ++k) companion(0, k) = -f.a[static_cast<std::size_t>(k)];
  for (Eigen::Index k = 1; k < p; ++k) companion(k, k - 1) = 1.0;
  Eigen::EigenSolver<Eigen::MatrixXd> solver(companion, /*computeEigenvectors=*/false);
  const Eigen::VectorXcd ev = solver.eigenvalues();
  return {ev.data(), ev.data() + p};
}

bool IsMinimumPhase(const VocalTractFilter& f) {
  const auto roots = FilterRoots(f);
  return std::all_of(roots.begin(), roots.end(), [](auto z) { return std::abs(z) < 1.0; });
}

VocalTractFilter Stabilize(const VocalTractFilter& f) {
  auto roots = FilterRoots(f);
  bool changed = false;
  for (auto& z : roots) {
    const double r = std::abs(z);
    if (r >= 1.0) {
      z = r > 1.0 ? 1.0 / std::conj(z) : z * (1.0 - 1e-9);
      changed = true;
    }
  }
  if (!changed) return f;
  // Expand prod (1 - z_i x) with x = z^-1.
  std::vector<std::complex<double>> poly{1.0};
  for (const auto& z : roots) {
    poly.push_back(0.0);
    for (std::size_t k = poly.size() - 1; k > 0; --k) poly[k] -= z * poly[k - 1];
  }
  VocalTractFilter out;
  out.a.resize(f.order());
  for (std::size_t k = 0; k < f.order(); ++k) out.a[k] = poly[k + 1].real();
  return out;
}

std::vector<double> InverseFilter(std::span<const double> s, const VocalTractFilter& f) {
  std::vector<double> e(s.size());
  const std::size_t p = f.order();
  for (std::size_t n = 0; n < s.size(); ++n) {
    double acc = s[n];
    const std::size_t kmax = std::min(p, n);
    for (std::size_t k = 1; k <= kmax; ++k) acc += f.a[k - 1] * s[n - k];
    e[n] = acc;
  }
  return e;
}

std::vector<double> AllPoleFilter(std::span<const double> x, const VocalTractFilter& f) {
  std::vector<double> y(x.size());
  const std::size_t p = f.order();
  for (std::size_t n = 0; n < x.size(); ++n) {
    double acc = x[n];
    const std::size_t kmax = std::min(p, n);
    for (std::size_t k = 1; k <= kmax; ++k) acc -= f.a[k - 1] * y[n - k];
    y[n] = acc;
  }
  return y;
}

double FilterMagnitude(const VocalTractFilter& f, double omega) {
  std::complex<double> acc = 1.0;
  for (std::size_t k = 1; k <= f.order(); ++k) {
    acc += f.a[k - 1] * std::polar(1.0, -omega * static_cast<double>(k));
  }
  return std::abs(acc);
}

}  // namespace glottalkit
