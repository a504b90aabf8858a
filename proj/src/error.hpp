// Copyright 2026 The qknit authors
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

#ifndef QKNIT_ERROR_HPP
#define QKNIT_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qknit {

enum class ErrorCode {
  InvalidArgument,
  SchemaError,
  ParseError,
  UnsupportedGate,
  Unpriced,
  IneligibleGroupMember,
  InfeasibleTrivially,
  InconsistentModel,
  SolverCrashed,
  ModelParseError,
  TooLarge,
  TooWide,
  GroupedCutUnsupported,
  UnpricedCut,
  Internal,
};

/// Exception carrying a machine-readable code next to the human message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

inline const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::SchemaError: return "SchemaError";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::UnsupportedGate: return "UnsupportedGate";
    case ErrorCode::Unpriced: return "Unpriced";
    case ErrorCode::IneligibleGroupMember: return "IneligibleGroupMember";
    case ErrorCode::InfeasibleTrivially: return "InfeasibleTrivially";
    case ErrorCode::InconsistentModel: return "InconsistentModel";
    case ErrorCode::SolverCrashed: return "SolverCrashed";
    case ErrorCode::ModelParseError: return "ModelParseError";
    case ErrorCode::TooLarge: return "TooLarge";
    case ErrorCode::TooWide: return "TooWide";
    case ErrorCode::GroupedCutUnsupported: return "GroupedCutUnsupported";
    case ErrorCode::UnpricedCut: return "UnpricedCut";
    case ErrorCode::Internal: return "Internal";
  }
  return "Unknown";
}

}  // namespace qknit

#endif
