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

#ifndef GLOTTALKIT_ERROR_HPP_
#define GLOTTALKIT_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace glottalkit {

// Every failure raised by the library carries one of these codes so callers
// (and the CLI) can map errors without parsing message text.
enum class ErrorCode {
  kInvalidArgument,
  kMalformedHeader,
  kUnsupportedEncoding,
  kEmptyAudio,
  kMultichannel,
  kSignalTooShort,
  kUnvoiced,
  kNonFinite,
  kDegenerateFrame,
  kBadMagic,
  kLayerDimMismatch,
  kTruncated,
  kOutOfRange,
  kZeroVariance,
  kDegenerateLabels,
  kDimensionMismatch,
  kDivergence,
  kEmptyInput,
  kIo,
  kParse,
};

const char* ErrorCodeName(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

// Throws Error(code, message) when cond is false.
inline void Require(bool cond, ErrorCode code, const std::string& message) {
  if (!cond) throw Error(code, message);
}

}  // namespace glottalkit

#endif  // GLOTTALKIT_ERROR_HPP_
