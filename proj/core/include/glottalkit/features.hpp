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

#ifndef GLOTTALKIT_FEATURES_HPP_
#define GLOTTALKIT_FEATURES_HPP_

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace glottalkit {

enum class FeatureKind { kSpectrogram513, kMel80, kMfcc39, kEmbedding };

std::string_view FeatureKindName(FeatureKind kind);  // spec513, mel80, mfcc39, embedding
std::optional<FeatureKind> ParseFeatureKind(std::string_view name);

// Fixed dimension per kind; embeddings are 768 or 1024 wide.
class FeatureVector {
 public:
  // Throws kDimensionMismatch or kNonFinite.
  FeatureVector(std::vector<double> values, FeatureKind kind);

  const std::vector<double>& values() const { return values_; }
  FeatureKind kind() const { return kind_; }
  std::size_t dim() const { return values_.size(); }
  double operator[](std::size_t i) const { return values_[i]; }

 private:
  std::vector<double> values_;
  FeatureKind kind_;
};

}  // namespace glottalkit

#endif  // GLOTTALKIT_FEATURES_HPP_
