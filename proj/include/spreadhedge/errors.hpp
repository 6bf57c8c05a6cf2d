// Copyright 2026 The Spreadhedge Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef SPREADHEDGE_ERRORS_HPP_
#define SPREADHEDGE_ERRORS_HPP_

#include <stdexcept>
#include <string>
#include <string_view>

namespace spreadhedge {

// Stable error codes. The CLI maps these onto exit codes and the
// machine-readable "reason" field, so the spelling is part of the interface.
enum class ErrorCode {
  kParseError,
  kValidationError,
  kUnknownNode,
  kShapeMismatch,
  kNotAnAntichain,
  kBadFriction,
  kBadFrictionGap,
  kNotStrict,
  kUnverifiedInput,
  kPreconditionViolated,
  kMismatchedTrees,
  kNumericalBreakdown,
  kTooLarge,
  kCertificateFailure,
  kIoError,
  kUsageError,
  kReportIncomplete,
};

std::string_view ErrorCodeName(ErrorCode code);

// Domain errors (as opposed to usage/input errors) are findings about the
// model itself, e.g. a certificate that does not check out.
bool IsDomainError(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(ErrorCodeName(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace spreadhedge

#endif  // SPREADHEDGE_ERRORS_HPP_
