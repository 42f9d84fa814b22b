// Copyright 2026 The dockmock Authors. All Rights Reserved.
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

#include "dockmock/faults.hpp"

namespace dockmock {

std::string_view fault_code(FaultType type) {
  switch (type) {
    case FaultType::SyntaxMistake: return "syntax-mistake";
    case FaultType::InstructionMisuse: return "instruction-misuse";
    case FaultType::CommandMisuse: return "command-misuse";
    case FaultType::CommandNotFound: return "command-not-found";
    case FaultType::OuterFileNotFound: return "outer-file-not-found";
    case FaultType::InnerFileNotFound: return "inner-file-not-found";
    case FaultType::ImageNotFound: return "image-not-found";
    case FaultType::ImageVersionMismatch: return "image-version-mismatch";
    case FaultType::PermissionDenied: return "permission-denied";
    case FaultType::RequireManualInput: return "require-manual-input";
  }
  return "syntax-mistake";
}

std::optional<FaultType> fault_from_code(std::string_view code) {
  for (FaultType type : kAllFaultTypes) {
    if (fault_code(type) == code) return type;
  }
  return std::nullopt;
}

std::string_view severity_name(Severity severity) {
  return severity == Severity::Error ? "ERROR" : "WARNING";
}

Severity default_severity(FaultType type) {
  switch (type) {
    case FaultType::ImageVersionMismatch:
    case FaultType::RequireManualInput:
      return Severity::Warning;
    default:
      return Severity::Error;
  }
}

Warning make_warning(FaultType type, int line, std::string subject,
                     std::string message) {
  return Warning{type, line, std::move(subject), std::move(message),
                 default_severity(type)};
}

}  // namespace dockmock
