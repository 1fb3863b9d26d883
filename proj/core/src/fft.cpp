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

#include "glottalkit/fft.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>

#include <fftw3.h>
#include <fmt/format.h>

#include "glottalkit/error.hpp"

namespace glottalkit {
namespace {

std::mutex& PlannerMutex() {
  static std::mutex m;
  return m;
}

}  // namespace

RealFft::RealFft(std::size_t size) : size_(size) {
  Require(size >= 2, ErrorCode::kInvalidArgument, "FFT size must be >= 2");
  std::lock_guard<std::mutex> lock(PlannerMutex());
  in_ = fftw_alloc_real(size_);
  auto* out = fftw_alloc_complex(bins());
  out_ = out;
  plan_ = fftw_plan_dft_r2c_1d(static_cast<int>(size_), in_, out, FFTW_ESTIMATE);
}

RealFft::~RealFft() {
  std::lock_guard<std::mutex> lock(PlannerMutex());
  fftw_destroy_plan(static_cast<fftw_plan>(plan_));
  fftw_free(in_);
  fftw_free(out_);
}

void RealFft::Execute(std::span<const double> x) {
  Require(x.size() <= size_, ErrorCode::kInvalidArgument,
          fmt::format("frame of {} samples exceeds FFT size {}", x.size(), size_));
  std::copy(x.begin(), x.end(), in_);
  std::fill(in_ + x.size(), in_ + size_, 0.0);
  fftw_execute(static_cast<fftw_plan>(plan_));
}

void RealFft::Magnitude(std::span<const double> x, std::span<double> out) {
  Execute(x);
  const auto* spec = static_cast<const fftw_complex*>(out_);
  for (std::size_t k = 0; k < bins() && k < out.size(); ++k) {
    out[k] = std::hypot(spec[k][0], spec[k][1]);
  }
}

std::vector<std::complex<double>> RealFft::Forward(std::span<const double> x) {
  Execute(x);
  const auto* spec = static_cast<const fftw_complex*>(out_);
  std::vector<std::complex<double>> out(bins());
  for (std::size_t k = 0; k < bins(); ++k) out[k] = {spec[k][0], spec[k][1]};
  return out;
}

}  // namespace glottalkit
