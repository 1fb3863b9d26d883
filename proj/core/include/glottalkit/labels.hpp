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

#ifndef GLOTTALKIT_LABELS_HPP_
#define GLOTTALKIT_LABELS_HPP_

#include <array>
#include <cstddef>
#include <optional>
#include <string_view>

namespace glottalkit {

// Fixed class order used by every report and tie-break.
enum class VoiceQuality : int { kBreathy = 0, kModal = 1, kPressed = 2 };

inline constexpr std::size_t kNumQualities = 3;
inline constexpr std::array<VoiceQuality, kNumQualities> kAllQualities = {
    VoiceQuality::kBreathy, VoiceQuality::kModal, VoiceQuality::kPressed};

inline std::size_t Index(VoiceQuality q) { return static_cast<std::size_t>(q); }

inline std::string_view QualityName(VoiceQuality q) {
  constexpr std::array<std::string_view, kNumQualities> names = {"breathy", "modal", "pressed"};
  return names[Index(q)];
}

inline std::optional<VoiceQuality> ParseQuality(std::string_view name) {
  for (auto q : kAllQualities) {
    if (QualityName(q) == name) return q;
  }
  return std::nullopt;
}

}  // namespace glottalkit

#endif  // GLOTTALKIT_LABELS_HPP_
