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

#ifndef GLOTTALKIT_FFT_HPP_
#define GLOTTALKIT_FFT_HPP_

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

namespace glottalkit {

// Real-input FFT of fixed size backed by FFTW. One instance per thread; plan
// creation is serialized internally, execution is not.
class RealFft {
 public:
  explicit RealFft(std::size_t size);
  ~RealFft();
  RealFft(const RealFft&) = delete;
  RealFft& operator=(const RealFft&) = delete;

  std::size_t size() const { return size_; }
  std::size_t bins() const { return size_ / 2 + 1; }

  // Zero-pads x (which must not exceed size()) and writes |X[k]| for k < bins().
  void Magnitude(std::span<const double> x, std::span<double> out);
  std::vector<std::complex<double>> Forward(std::span<const double> x);

 private:
  void Execute(std::span<const double> x);

  std::size_t size_;
  double* in_ = nullptr;
  void* out_ = nullptr;
  void* plan_ = nullptr;
};

}  // namespace glottalkit

#endif  // GLOTTALKIT_FFT_HPP_
