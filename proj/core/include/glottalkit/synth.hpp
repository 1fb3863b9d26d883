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

// Synthetic sustained vowels with known glottal timing: a Rosenberg pulse
// train, lip radiation, aspiration noise and an all-pole formant cascade.

#ifndef GLOTTALKIT_SYNTH_HPP_
#define GLOTTALKIT_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "glottalkit/dataset.hpp"
#include "glottalkit/labels.hpp"
#include "glottalkit/signal.hpp"

namespace glottalkit {

enum class Vowel { kA, kAe, kE, kI, kU };
inline constexpr std::size_t kNumVowels = 5;
inline constexpr Vowel kAllVowels[kNumVowels] = {Vowel::kA, Vowel::kAe, Vowel::kE, Vowel::kI,
                                                 Vowel::kU};
std::string_view VowelName(Vowel v);  // a, ae, e, i, u
std::optional<Vowel> ParseVowel(std::string_view name);

struct Formant {
  double frequency = 0.0;  // Hz
  double bandwidth = 0.0;  // Hz
};

std::vector<Formant> VowelFormants(Vowel v);
// Approximation of a skin-mounted sensor: resonances lowered and narrowed.
std::vector<Formant> NsaFormants(const std::vector<Formant>& speech);

struct VoicePreset {
  VoiceQuality quality = VoiceQuality::kModal;
  double open_quotient = 0.55;   // open phase / period
  double speed_quotient = 0.65;  // opening phase / open phase
  double tilt = 0.2;             // one-pole lowpass coefficient on the source, [0, 1)
  double aspiration = 0.03;      // noise RMS relative to the source RMS
  double f0 = 200.0;
  std::vector<Formant> formants;
  double jitter_pct = 0.3;
  double shimmer_pct = 1.5;
  double duration_s = 0.5;
  // Additive white recording noise, RMS relative to the normalized peak.
  double noise_floor = 1e-3;

  // Throws kInvalidArgument, including for a formant at or above fs/2.
  void Validate(double fs) const;
};

VoicePreset MakePreset(VoiceQuality quality, Vowel vowel, double f0 = 200.0);

struct SynthResult {
  Waveform wave{std::vector<double>{0.0}, 1.0};
  std::vector<std::size_t> onsets;    // first sample of each open phase
  std::vector<std::size_t> closures;  // instant of closure (main excitation)
};

// Deterministic in (preset, fs, seed). The peak is normalized to 0.5 before
// the recording noise is added.
SynthResult SynthesizeVowel(const VoicePreset& preset, double fs, std::uint64_t seed);

struct CorpusOptions {
  std::size_t n_speakers = 12;
  std::size_t repetitions = 2;
  double fs = 16000.0;
  double duration_s = 0.5;
  double base_f0 = 200.0;
  double f0_spread = 0.15;       // per-speaker f0 factor in 1 +- spread
  double formant_spread = 0.08;  // per-speaker formant factor in 1 +- spread
  double oq_spread = 0.04;       // per-speaker open-quotient offset
  bool speech = true;
  bool nsa = false;
  std::uint64_t seed = 0;
};

struct CorpusItem {
  ManifestRow row;  // path relative to the corpus root
  SynthResult synth;
};

// speakers x qualities x vowels x repetitions items per modality, ordered by
// modality, speaker, quality, vowel, repetition.
std::vector<CorpusItem> GenerateCorpus(const CorpusOptions& opts);

}  // namespace glottalkit

#endif  // GLOTTALKIT_SYNTH_HPP_
