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

// VQMDL1 model container:
//
//   bytes 0-5  "VQMDL1"
//   byte  6    kind (1 = SVM, 2 = CNN)
//   uint32 LE  block count
//   blocks     uint32 LE value count, then that many float64 LE values
//
// Blocks 0 and 1 hold the z-score mean and deviation. SVM: a header block
// [gamma, dim, n_classes, class ids..., n_machines], then per machine
// [positive, negative, bias, n_sv], [support vectors row-major], [coef].
// CNN: [input_dim, filters x3, hidden, bn_epsilon], [parameters], [running stats].

#ifndef GLOTTALKIT_MODEL_IO_HPP_
#define GLOTTALKIT_MODEL_IO_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <string_view>
#include <vector>

#include "glottalkit/classifier.hpp"

namespace glottalkit {

inline constexpr std::string_view kModelMagic = "VQMDL1";

std::vector<std::uint8_t> EncodeClassifier(const TrainedClassifier& c);
TrainedClassifier DecodeClassifier(std::span<const std::uint8_t> bytes);

void SaveClassifier(const std::filesystem::path& path, const TrainedClassifier& c);
TrainedClassifier LoadClassifier(const std::filesystem::path& path);

}  // namespace glottalkit

#endif  // GLOTTALKIT_MODEL_IO_HPP_
