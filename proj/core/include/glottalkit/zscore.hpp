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

#ifndef GLOTTALKIT_ZSCORE_HPP_
#define GLOTTALKIT_ZSCORE_HPP_

#include <span>
#include <vector>

#include "glottalkit/matrix.hpp"

namespace glottalkit {

inline constexpr double kMinStd = 1e-12;

// Per-dimension mean and population standard deviation of the training rows;
// the deviation is clamped to kMinStd so constant dimensions map to zero.
struct ZScoreStats {
  std::vector<double> mean;
  std::vector<double> std;

  // Throws kEmptyInput with fewer than two rows.
  static ZScoreStats Fit(const RowMatrix& train);

  RowMatrix Apply(const RowMatrix& x) const;
  std::vector<double> Apply(std::span<const double> x) const;
};

}  // namespace glottalkit

#endif  // GLOTTALKIT_ZSCORE_HPP_
