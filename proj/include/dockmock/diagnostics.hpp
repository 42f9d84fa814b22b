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

#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "dockmock/faults.hpp"

namespace dockmock {

struct Diagnostic {
  std::string file;
  int line = 0;
  Severity severity = Severity::Error;
  std::string code;
  std::string message;
  std::string subject;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

/// Project settings read from `.dockmock.toml`:
///
///   disable = ["permission-denied", "require-manual-input"]
///   severity.image-version-mismatch = "error"
struct DiagnosticConfig {
  std::set<FaultType> disabled;
  std::map<FaultType, Severity> severity;
};

inline constexpr const char* kConfigFileName = ".dockmock.toml";

/// Throws ManifestFault naming the offending line.
DiagnosticConfig parse_config(std::string_view text);

std::vector<Diagnostic> to_diagnostics(const std::vector<Warning>& warnings, const std::string& file,
                                       const DiagnosticConfig& config = {});

/// `<file>:<line>: <SEVERITY> [<code>] <message>`, one line per finding.
std::string format_text(const std::vector<Diagnostic>& diags);
/// A JSON array with keys file, line, severity, code, message, subject.
std::string format_json(const std::vector<Diagnostic>& diags);
std::vector<Diagnostic> parse_json_diagnostics(std::string_view text);

enum class FailOn { Error, Warning, Never };

/// Whether any finding reaches the threshold.
bool fails(const std::vector<Diagnostic>& diags, FailOn threshold);

}  // namespace dockmock
