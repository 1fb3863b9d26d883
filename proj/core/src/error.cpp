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

#include "glottalkit/error.hpp"

namespace glottalkit {

const char* ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidArgument: return "invalid argument";
    case ErrorCode::kMalformedHeader: return "malformed header";
    case ErrorCode::kUnsupportedEncoding: return "unsupported encoding";
    case ErrorCode::kEmptyAudio: return "empty audio";
    case ErrorCode::kMultichannel: return "multichannel unsupported";
    case ErrorCode::kSignalTooShort: return "signal too short";
    case ErrorCode::kUnvoiced: return "unvoiced/aperiodic";
    case ErrorCode::kNonFinite: return "non-finite value";
    case ErrorCode::kDegenerateFrame: return "degenerate frame";
    case ErrorCode::kBadMagic: return "bad magic";
    case ErrorCode::kLayerDimMismatch: return "layer/dim mismatch";
    case ErrorCode::kTruncated: return "truncated payload";
    case ErrorCode::kOutOfRange: return "index out of range";
    case ErrorCode::kZeroVariance: return "zero variance";
    case ErrorCode::kDegenerateLabels: return "degenerate labels";
    case ErrorCode::kDimensionMismatch: return "dimension mismatch";
    case ErrorCode::kDivergence: return "divergence";
    case ErrorCode::kEmptyInput: return "empty input";
    case ErrorCode::kIo: return "i/o error";
    case ErrorCode::kParse: return "parse error";
  }
  return "unknown error";
}

}  // namespace glottalkit
