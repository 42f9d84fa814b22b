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

#pragma once

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dockmock {

/// The closed taxonomy of Dockerfile faults.
enum class FaultType {
  SyntaxMistake,
  InstructionMisuse,
  CommandMisuse,
  CommandNotFound,
  OuterFileNotFound,
  InnerFileNotFound,
  ImageNotFound,
  ImageVersionMismatch,
  PermissionDenied,
  RequireManualInput,
};

inline constexpr std::array<FaultType, 10> kAllFaultTypes = {
    FaultType::SyntaxMistake,      FaultType::InstructionMisuse,
    FaultType::CommandMisuse,      FaultType::CommandNotFound,
    FaultType::OuterFileNotFound,  FaultType::InnerFileNotFound,
    FaultType::ImageNotFound,      FaultType::ImageVersionMismatch,
    FaultType::PermissionDenied,   FaultType::RequireManualInput,
};

enum class Severity { Error, Warning };

/// Stable diagnostic code, e.g. "outer-file-not-found".
std::string_view fault_code(FaultType type);
std::optional<FaultType> fault_from_code(std::string_view code);
std::string_view severity_name(Severity severity);

/// Conflicts abort a real build except for the two heuristic detections,
/// which are reported as warnings.
Severity default_severity(FaultType type);

struct Warning {
  FaultType fault_type = FaultType::SyntaxMistake;
  int line = 0;
  std::string subject;
  std::string message;
  Severity severity = Severity::Error;

  friend bool operator==(const Warning&, const Warning&) = default;
};

Warning make_warning(FaultType type, int line, std::string subject,
                     std::string message);

/// A parse failure. Parsing never throws; it yields this value instead.
struct SyntaxFault {
  int line = 0;
  std::string reason;
};

class IoFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class StoreFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class RuntimeFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ManifestFault : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ConflictFault : public std::runtime_error {
 public:
  ConflictFault(FaultType type, std::string path, const std::string& what)
      : std::runtime_error(what), type_(type), path_(std::move(path)) {}

  FaultType type() const { return type_; }
  const std::string& path() const { return path_; }

 private:
  FaultType type_;
  std::string path_;
};

}  // namespace dockmock
