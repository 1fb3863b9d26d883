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

#include "glottalkit/wav.hpp"

#include <algorithm>
#include <cmath>

#include <fmt/format.h>

#include "glottalkit/binary_io.hpp"
#include "glottalkit/error.hpp"

namespace glottalkit {
namespace {

constexpr std::uint16_t kFormatPcm = 1;
constexpr std::uint16_t kFormatFloat = 3;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

struct FmtChunk {
  std::uint16_t format = 0;
  std::uint16_t channels = 0;
  std::uint32_t sample_rate = 0;
  std::uint16_t block_align = 0;
  std::uint16_t bits = 0;
};

bool TagIs(std::span<const std::uint8_t> tag, const char* id) {
  return std::equal(tag.begin(), tag.end(), reinterpret_cast<const std::uint8_t*>(id));
}

}  // namespace

Waveform ParseWav(std::span<const std::uint8_t> bytes, const WavReadOptions& opts) {
  ByteReader r(bytes);
  Require(r.CanRead(12), ErrorCode::kMalformedHeader, "file too small for a RIFF header");
  Require(TagIs(r.Take(4), "RIFF"), ErrorCode::kMalformedHeader, "missing RIFF tag");
  r.Skip(4);
  Require(TagIs(r.Take(4), "WAVE"), ErrorCode::kMalformedHeader, "missing WAVE tag");

  FmtChunk fmt_chunk;
  bool have_fmt = false;
  std::span<const std::uint8_t> data;
  bool have_data = false;
  while (r.CanRead(8) && !have_data) {
    auto id = r.Take(4);
    const auto size = r.Get<std::uint32_t>();
    if (TagIs(id, "fmt ")) {
      Require(size >= 16 && r.CanRead(size), ErrorCode::kMalformedHeader, "short fmt chunk");
      fmt_chunk.format = r.Get<std::uint16_t>();
      fmt_chunk.channels = r.Get<std::uint16_t>();
      fmt_chunk.sample_rate = r.Get<std::uint32_t>();
      r.Skip(4);  // byte rate
      fmt_chunk.block_align = r.Get<std::uint16_t>();
      fmt_chunk.bits = r.Get<std::uint16_t>();
      std::size_t consumed = 16;
      if (fmt_chunk.format == kFormatExtensible && size >= 40) {
        r.Skip(8);  // cbSize, valid bits, channel mask
        fmt_chunk.format = r.Get<std::uint16_t>();  // first two bytes of the sub-format GUID
        consumed += 10;
      }
      r.Skip(size - consumed + (size & 1u));
      have_fmt = true;
    } else if (TagIs(id, "data")) {
      Require(have_fmt, ErrorCode::kMalformedHeader, "data chunk precedes fmt chunk");
      // Some writers leave the size field unset (0xFFFFFFFF) when streaming.
      const std::size_t n = std::min<std::size_t>(size, r.remaining());
      data = r.Take(n);
      have_data = true;
    } else {
      Require(r.CanRead(size), ErrorCode::kMalformedHeader, "chunk overruns file");
      r.Skip(size + (size & 1u));
    }
  }
  Require(have_fmt, ErrorCode::kMalformedHeader, "missing fmt chunk");
  Require(have_data, ErrorCode::kMalformedHeader, "missing data chunk");
  Require(fmt_chunk.channels >= 1, ErrorCode::kMalformedHeader, "zero channels");
  Require(fmt_chunk.channels == 1, ErrorCode::kMultichannel,
          fmt::format("multichannel unsupported ({} channels)", fmt_chunk.channels));
  Require(fmt_chunk.sample_rate > 0, ErrorCode::kMalformedHeader, "zero sample rate");

  std::vector<double> samples;
  if (fmt_chunk.format == kFormatPcm && fmt_chunk.bits == 16) {
    samples.resize(data.size() / 2);
    ByteReader d(data);
    for (double& v : samples) v = static_cast<double>(d.Get<std::int16_t>()) / 32768.0;
  } else if (fmt_chunk.format == kFormatFloat && fmt_chunk.bits == 32) {
    samples.resize(data.size() / 4);
    ByteReader d(data);
    for (double& v : samples) v = static_cast<double>(d.Get<float>());
  } else {
    throw Error(ErrorCode::kUnsupportedEncoding,
                fmt::format("unsupported encoding (format tag {}, {} bits)", fmt_chunk.format,
                            fmt_chunk.bits));
  }
  Require(!samples.empty(), ErrorCode::kEmptyAudio, "WAV file contains no audio");
  Waveform w(std::move(samples), static_cast<double>(fmt_chunk.sample_rate));
  return opts.peak_normalize ? PeakNormalize(w) : w;
}

Waveform LoadWav(const std::filesystem::path& path, const WavReadOptions& opts) {
  const auto bytes = ReadFileBytes(path);
  try {
    return ParseWav(bytes, opts);
  } catch (const Error& e) {
    throw Error(e.code(), fmt::format("{}: {}", path.string(), e.what()));
  }
}

std::vector<std::uint8_t> EncodeWav(const Waveform& w, WavEncoding encoding) {
  const bool pcm = encoding == WavEncoding::kPcm16;
  const std::uint16_t bits = pcm ? 16 : 32;
  const std::uint16_t block_align = bits / 8;
  const auto data_size = static_cast<std::uint32_t>(w.size() * block_align);
  const auto rate = static_cast<std::uint32_t>(std::lround(w.fs()));

  ByteWriter out;
  out.PutString("RIFF");
  out.Put<std::uint32_t>(36 + data_size);
  out.PutString("WAVE");
  out.PutString("fmt ");
  out.Put<std::uint32_t>(16);
  out.Put<std::uint16_t>(pcm ? kFormatPcm : kFormatFloat);
  out.Put<std::uint16_t>(1);
  out.Put<std::uint32_t>(rate);
  out.Put<std::uint32_t>(rate * block_align);
  out.Put<std::uint16_t>(block_align);
  out.Put<std::uint16_t>(bits);
  out.PutString("data");
  out.Put<std::uint32_t>(data_size);
  for (double v : w.samples()) {
    if (pcm) {
      const double q = std::clamp(std::round(v * 32768.0), -32768.0, 32767.0);
      out.Put<std::int16_t>(static_cast<std::int16_t>(q));
    } else {
      out.Put<float>(static_cast<float>(v));
    }
  }
  return std::move(out.bytes());
}

void WriteWav(const std::filesystem::path& path, const Waveform& w, WavEncoding encoding) {
  WriteFileBytes(path, EncodeWav(w, encoding));
}

}  // namespace glottalkit
