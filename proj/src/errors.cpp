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

#include "spreadhedge/errors.hpp"

namespace spreadhedge {

std::string_view ErrorCodeName(ErrorCode code) {
  switch (code) {
    case ErrorCode::kParseError: return "ParseError";
    case ErrorCode::kValidationError: return "ValidationError";
    case ErrorCode::kUnknownNode: return "UnknownNode";
    case ErrorCode::kShapeMismatch: return "ShapeMismatch";
    case ErrorCode::kNotAnAntichain: return "NotAnAntichain";
    case ErrorCode::kBadFriction: return "BadFriction";
    case ErrorCode::kBadFrictionGap: return "BadFrictionGap";
    case ErrorCode::kNotStrict: return "NotStrict";
    case ErrorCode::kUnverifiedInput: return "UnverifiedInput";
    case ErrorCode::kPreconditionViolated: return "PreconditionViolated";
    case ErrorCode::kMismatchedTrees: return "MismatchedTrees";
    case ErrorCode::kNumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::kTooLarge: return "TooLarge";
    case ErrorCode::kCertificateFailure: return "CertificateFailure";
    case ErrorCode::kIoError: return "IoError";
    case ErrorCode::kUsageError: return "UsageError";
    case ErrorCode::kReportIncomplete: return "ReportIncomplete";
  }
  return "Unknown";
}

bool IsDomainError(ErrorCode code) {
  switch (code) {
    case ErrorCode::kCertificateFailure:
    case ErrorCode::kNumericalBreakdown:
    case ErrorCode::kNotStrict:
    case ErrorCode::kUnverifiedInput:
    case ErrorCode::kPreconditionViolated:
      return true;
    default:
      return false;
  }
}

}  // namespace spreadhedge
