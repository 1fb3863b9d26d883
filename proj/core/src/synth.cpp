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

#include "glottalkit/synth.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <random>

#include <fmt/format.h>

#include "glottalkit/error.hpp"

namespace glottalkit {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kPrerollSeconds = 0.3;

std::uint64_t Mix(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ULL;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

std::uint64_t Combine(std::uint64_t a, std::uint64_t b) { return Mix(a ^ Mix(b)); }

// Local generators keep the output independent of the standard library's
// distribution implementations.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  double Uniform() { return (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53; }
  double Symmetric() { return 2.0 * Uniform() - 1.0; }
  double Normal() {
    const double u1 = Uniform();
    const double u2 = Uniform();
    return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * kPi * u2);
  }

 private:
  std::mt19937_64 engine_;
};

// Rosenberg flow pulse at time tau after onset; te = open phase, tp = opening.
double RosenbergFlow(double tau, double tp, double te) {
  if (tau < 0.0 || tau >= te) return 0.0;
  if (tau <= tp) return 0.5 * (1.0 - std::cos(kPi * tau / tp));
  return std::cos(0.5 * kPi * (tau - tp) / (te - tp));
}

// Two-pole resonator with unit gain at DC.
void Resonate(std::vector<double>& x, const Formant& f, double fs) {
  const double r = std::exp(-kPi * f.bandwidth / fs);
  const double theta = 2.0 * kPi * f.frequency / fs;
  const double a1 = 2.0 * r * std::cos(theta);
  const double a2 = -r * r;
  const double g = 1.0 - a1 - a2;
  double y1 = 0.0, y2 = 0.0;
  for (double& v : x) {
    const double y = g * v + a1 * y1 + a2 * y2;
    y2 = y1;
    y1 = y;
    v = y;
  }
}

}  // namespace

std::string_view VowelName(Vowel v) {
  constexpr std::array<std::string_view, kNumVowels> names = {"a", "ae", "e", "i", "u"};
  return names[static_cast<std::size_t>(v)];
}

std::optional<Vowel> ParseVowel(std::string_view name) {
  for (auto v : kAllVowels) {
    if (VowelName(v) == name) return v;
  }
  return std::nullopt;
}

std::vector<Formant> VowelFormants(Vowel v) {
  // Adult female averages, rounded.
  static const std::array<std::array<double, 3>, kNumVowels> f123 = {{
      {850, 1220, 2810},
      {860, 2050, 2850},
      {560, 2320, 2950},
      {310, 2790, 3310},
      {370, 950, 2670},
  }};
  const auto& f = f123[static_cast<std::size_t>(v)];
  return {{f[0], 80}, {f[1], 100}, {f[2], 150}, {3800, 200}, {4600, 250}};
}

std::vector<Formant> NsaFormants(const std::vector<Formant>& speech) {
  std::vector<Formant> out;
  for (const auto& f : speech) out.push_back({0.55 * f.frequency, 0.6 * f.bandwidth});
  return out;
}

void VoicePreset::Validate(double fs) const {
  auto bad = [](const std::string& m) { return Error(ErrorCode::kInvalidArgument, m); };
  if (!(open_quotient > 0.0 && open_quotient < 1.0)) throw bad("open quotient must be in (0, 1)");
  if (!(speed_quotient > 0.0 && speed_quotient < 1.0)) throw bad("speed quotient must be in (0, 1)");
  if (!(tilt >= 0.0 && tilt < 1.0)) throw bad("tilt must be in [0, 1)");
  if (!(aspiration >= 0.0)) throw bad("aspiration must be non-negative");
  if (!(f0 >= 60.0 && f0 <= 500.0)) throw bad(fmt::format("f0 {} Hz outside [60, 500]", f0));
  if (!(jitter_pct >= 0.0 && jitter_pct < 20.0)) throw bad("jitter must be in [0, 20) %");
  if (!(shimmer_pct >= 0.0 && shimmer_pct < 50.0)) throw bad("shimmer must be in [0, 50) %");
  if (!(duration_s > 0.0)) throw bad("duration must be positive");
  if (!(noise_floor >= 0.0)) throw bad("noise floor must be non-negative");
  if (!(fs > 0.0)) throw bad("sampling rate must be positive");
  for (const auto& f : formants) {
    if (!(f.frequency > 0.0 && f.frequency < fs / 2.0)) {
      throw bad(fmt::format("formant {} Hz is not below Nyquist ({} Hz)", f.frequency, fs / 2.0));
    }
    if (!(f.bandwidth > 0.0)) throw bad("formant bandwidth must be positive");
  }
}

VoicePreset MakePreset(VoiceQuality quality, Vowel vowel, double f0) {
  VoicePreset p;
  p.quality = quality;
  p.f0 = f0;
  p.formants = VowelFormants(vowel);
  switch (quality) {
    case VoiceQuality::kBreathy:
      p.open_quotient = 0.75;
      p.speed_quotient = 0.5;
      p.tilt = 0.5;
      p.aspiration = 0.15;
      p.jitter_pct = 0.5;
      p.shimmer_pct = 3.0;
      break;
    case VoiceQuality::kModal:
      p.open_quotient = 0.55;
      p.speed_quotient = 0.65;
      p.tilt = 0.2;
      p.aspiration = 0.03;
      p.jitter_pct = 0.3;
      p.shimmer_pct = 1.5;
      break;
    case VoiceQuality::kPressed:
      p.open_quotient = 0.35;
      p.speed_quotient = 0.75;
      p.tilt = 0.0;
      p.aspiration = 0.01;
      p.jitter_pct = 0.3;
      p.shimmer_pct = 1.5;
      break;
  }
  return p;
}

SynthResult SynthesizeVowel(const VoicePreset& p, double fs, std::uint64_t seed) {
  p.Validate(fs);
  Rng rng(seed);
  const double t0 = fs / p.f0;
  const auto n_out = static_cast<std::size_t>(std::llround(p.duration_s * fs));
  Require(n_out >= 2, ErrorCode::kInvalidArgument, "duration too short");
  // Whole periods of pre-roll let the filters reach steady state.
  const double preroll = std::ceil(kPrerollSeconds * p.f0) * t0;
  const auto n_pre = static_cast<std::size_t>(std::llround(preroll));
  const std::size_t n = n_pre + n_out;

  std::vector<double> flow(n, 0.0);
  std::vector<double> onsets_f, closures_f;
  double onset = 0.0;
  while (onset < static_cast<double>(n)) {
    const double period = t0 * std::max(0.5, 1.0 + 0.01 * p.jitter_pct * rng.Normal());
    const double amp = std::max(0.1, 1.0 + 0.01 * p.shimmer_pct * rng.Normal());
    const double te = p.open_quotient * period;
    const double tp = p.speed_quotient * te;
    const double next = onset + period;
    const auto first = static_cast<std::size_t>(std::ceil(onset));
    const auto last = std::min(n, static_cast<std::size_t>(std::ceil(next)));
    for (std::size_t i = first; i < last; ++i) {
      flow[i] = amp * RosenbergFlow(static_cast<double>(i) - onset, tp, te);
    }
    onsets_f.push_back(onset);
    closures_f.push_back(onset + te);
    onset = next;
  }

  // Lip radiation as a first difference of the flow.
  std::vector<double> x(n);
  x[0] = flow[0];
  for (std::size_t i = 1; i < n; ++i) x[i] = flow[i] - flow[i - 1];

  double y1 = 0.0;
  for (double& v : x) {
    y1 = (1.0 - p.tilt) * v + p.tilt * y1;
    v = y1;
  }

  if (p.aspiration > 0.0) {
    const double level = p.aspiration * Rms(x);
    const double peak = *std::max_element(flow.begin(), flow.end());
    for (std::size_t i = 0; i < n; ++i) {
      // Turbulence grows with the glottal opening.
      const double gate = 0.5 + 0.5 * (peak > 0.0 ? flow[i] / peak : 0.0);
      x[i] += level * gate * rng.Normal();
    }
  }

  for (const auto& f : p.formants) Resonate(x, f, fs);

  std::vector<double> out(x.begin() + static_cast<std::ptrdiff_t>(n_pre), x.end());
  double peak = 0.0;
  for (double v : out) peak = std::max(peak, std::abs(v));
  Require(peak > 0.0, ErrorCode::kInvalidArgument, "synthesized signal is silent");
  for (double& v : out) v *= 0.5 / peak;
  if (p.noise_floor > 0.0) {
    for (double& v : out) v += 0.5 * p.noise_floor * rng.Normal();
  }

  SynthResult r;
  r.wave = Waveform(std::move(out), fs);
  const double lo = static_cast<double>(n_pre);
  const double hi = static_cast<double>(n);
  for (std::size_t k = 0; k < onsets_f.size(); ++k) {
    const double on = std::round(onsets_f[k]);
    if (on >= lo && on < hi) r.onsets.push_back(static_cast<std::size_t>(on - lo));
    const double cl = std::round(closures_f[k]);
    if (cl >= lo && cl < hi) r.closures.push_back(static_cast<std::size_t>(cl - lo));
  }
  return r;
}

std::vector<CorpusItem> GenerateCorpus(const CorpusOptions& o) {
  Require(o.n_speakers >= 1 && o.repetitions >= 1, ErrorCode::kInvalidArgument,
          "corpus needs at least one speaker and one repetition");
  Require(o.speech || o.nsa, ErrorCode::kInvalidArgument, "corpus needs at least one modality");
  struct Speaker {
    double f0_scale, formant_scale, oq_offset;
  };
  std::vector<Speaker> speakers;
  for (std::size_t s = 0; s < o.n_speakers; ++s) {
    Rng rng(Combine(o.seed, 0x5000 + s));
    speakers.push_back({1.0 + o.f0_spread * rng.Symmetric(),
                        1.0 + o.formant_spread * rng.Symmetric(), o.oq_spread * rng.Symmetric()});
  }

  std::vector<CorpusItem> items;
  for (int modality = 0; modality < 2; ++modality) {
    const bool nsa = modality == 1;
    if ((nsa && !o.nsa) || (!nsa && !o.speech)) continue;
    const SourceVariant variant = nsa ? SourceVariant::kNsa : SourceVariant::kSpeech;
    for (std::size_t s = 0; s < o.n_speakers; ++s) {
      const std::string id = fmt::format("S{:02d}", s + 1);
      for (auto q : kAllQualities) {
        for (auto v : kAllVowels) {
          for (std::size_t rep = 0; rep < o.repetitions; ++rep) {
            VoicePreset p = MakePreset(q, v, o.base_f0 * speakers[s].f0_scale);
            p.duration_s = o.duration_s;
            p.open_quotient += speakers[s].oq_offset;
            for (auto& f : p.formants) f.frequency *= speakers[s].formant_scale;
            if (nsa) p.formants = NsaFormants(p.formants);
            // The same glottal excitation drives both modalities.
            const std::uint64_t seed =
                Combine(Combine(Combine(o.seed, s), Index(q) * 16 + static_cast<std::size_t>(v)),
                        rep);
            CorpusItem item;
            item.synth = SynthesizeVowel(p, o.fs, seed);
            item.row.speaker_id = id;
            item.row.label = q;
            item.row.vowel = std::string(VowelName(v));
            item.row.repetition = fmt::format("r{}", rep + 1);
            item.row.variant = variant;
            item.row.path = fmt::format("{}/{}_{}_{}_{}.wav", SourceVariantName(variant), id,
                                        QualityName(q), VowelName(v), item.row.repetition);
            items.push_back(std::move(item));
          }
        }
      }
    }
  }
  return items;
}

}  // namespace glottalkit
