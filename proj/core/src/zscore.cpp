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

#include "glottalkit/zscore.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "glottalkit/error.hpp"

namespace glottalkit {

ZScoreStats ZScoreStats::Fit(const RowMatrix& train) {
  Require(train.rows() >= 2, ErrorCode::kEmptyInput,
          fmt::format("z-score needs at least two training vectors (got {})", train.rows()));
  const auto n = static_cast<double>(train.rows());
  ZScoreStats s;
  s.mean.resize(static_cast<std::size_t>(train.cols()));
  s.std.resize(s.mean.size());
  for (Eigen::Index j = 0; j < train.cols(); ++j) {
    const double mu = train.col(j).sum() / n;
    const double var = (train.col(j).array() - mu).square().sum() / n;
    s.mean[static_cast<std::size_t>(j)] = mu;
    s.std[static_cast<std::size_t>(j)] = std::max(std::sqrt(var), kMinStd);
  }
  return s;
}

RowMatrix ZScoreStats::Apply(const RowMatrix& x) const {
  Require(static_cast<std::size_t>(x.cols()) == mean.size(), ErrorCode::kDimensionMismatch,
          fmt::format("z-score fitted on dim {} applied to dim {}", mean.size(), x.cols()));
  RowMatrix out(x.rows(), x.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      const auto k = static_cast<std::size_t>(j);
      out(i, j) = (x(i, j) - mean[k]) / std[k];
    }
  }
  return out;
}

std::vector<double> ZScoreStats::Apply(std::span<const double> x) const {
  Require(x.size() == mean.size(), ErrorCode::kDimensionMismatch,
          fmt::format("z-score fitted on dim {} applied to dim {}", mean.size(), x.size()));
  std::vector<double> out(x.size());
  for (std::size_t k = 0; k < x.size(); ++k) out[k] = (x[k] - mean[k]) / std[k];
  return out;
}

}  // namespace glottalkit
