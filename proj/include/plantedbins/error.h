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

#ifndef PLANTEDBINS_ERROR_H_
#define PLANTEDBINS_ERROR_H_

#include <stdexcept>
#include <string>
#include <string_view>

namespace plantedbins {

enum class ErrorCode {
  kInvalidPlanting,
  kInvalidConfiguration,
  kArithmeticOverflow,
  kDegeneratePlanting,
  kScaleTooLarge,
  kNotEnoughBalls,
  kUndefinedForEmpty,
  kDimensionMismatch,
  kUnsupportedPower,
  kNoThresholdDefined,
  kUndefinedErrorTerm,
  kEnumerationTooLarge,
  kInvalidScale,
  kDegenerateStandardization,
  kInvalidArgument,
  kIoError,
};

std::string_view ErrorCodeName(ErrorCode code);

// All library failures are reported with this exception type; `code()` lets
// callers branch without parsing the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace plantedbins

#endif  // PLANTEDBINS_ERROR_H_
