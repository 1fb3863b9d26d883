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

// Mono RIFF/WAVE reader and writer. PCM16 samples map to value / 32768;
// IEEE float32 samples are taken as-is.

#ifndef GLOTTALKIT_WAV_HPP_
#define GLOTTALKIT_WAV_HPP_

#include <cstdint>
#include <filesystem>
#include <span>
#include <vector>

#include "glottalkit/signal.hpp"

namespace glottalkit {

enum class WavEncoding { kPcm16, kFloat32 };

struct WavReadOptions {
  bool peak_normalize = false;
};

Waveform LoadWav(const std::filesystem::path& path, const WavReadOptions& opts = {});
Waveform ParseWav(std::span<const std::uint8_t> bytes, const WavReadOptions& opts = {});

// PCM16 output is clipped to [-32768, 32767] after rounding v * 32768.
void WriteWav(const std::filesystem::path& path, const Waveform& w,
              WavEncoding encoding = WavEncoding::kPcm16);
std::vector<std::uint8_t> EncodeWav(const Waveform& w, WavEncoding encoding);

}  // namespace glottalkit

#endif  // GLOTTALKIT_WAV_HPP_
