// Copyright 2026 The plantedbins Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "plantedbins/error.h"

namespace plantedbins {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kInvalidPlanting:
      return "InvalidPlanting";
    case ErrorCode::kInvalidConfiguration:
      return "InvalidConfiguration";
    case ErrorCode::kArithmeticOverflow:
      return "ArithmeticOverflow";
    case ErrorCode::kDegeneratePlanting:
      return "DegeneratePlanting";
    case ErrorCode::kScaleTooLarge:
      return "ScaleTooLarge";
    case ErrorCode::kNotEnoughBalls:
      return "NotEnoughBalls";
    case ErrorCode::kUndefinedForEmpty:
      return "UndefinedForEmpty";
    case ErrorCode::kDimensionMismatch:
      return "DimensionMismatch";
    case ErrorCode::kUnsupportedPower:
      return "UnsupportedPower";
    case ErrorCode::kNoThresholdDefined:
      return "NoThresholdDefined";
    case ErrorCode::kUndefinedErrorTerm:
      return "UndefinedErrorTerm";
    case ErrorCode::kEnumerationTooLarge:
      return "EnumerationTooLarge";
    case ErrorCode::kInvalidScale:
      return "InvalidScale";
    case ErrorCode::kDegenerateStandardization:
      return "DegenerateStandardization";
    case ErrorCode::kInvalidArgument:
      return "InvalidArgument";
    case ErrorCode::kIoError:
      return "IoError";
  }
  return "Unknown";
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
      code_(code) {}

}  // namespace plantedbins
