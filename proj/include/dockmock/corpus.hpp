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

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "dockmock/faults.hpp"
#include "dockmock/mocks.hpp"

namespace dockmock {

struct FaultLabel {
  int line = 0;
  FaultType fault_type = FaultType::SyntaxMistake;

  friend bool operator==(const FaultLabel&, const FaultLabel&) = default;
};

struct CorpusCase {
  std::string name;
  std::filesystem::path dockerfile;
  std::filesystem::path workspace;
  std::vector<FaultLabel> labels;
  std::optional<std::filesystem::path> priors;
};

/// A JSON array of cases:
///   [{"name": "...", "dockerfile": "a/Dockerfile", "workspace": "a",
///     "labels": [{"line": 4, "type": "outer-file-not-found"}],
///     "priors": "priors.json"}]
/// Relative paths are taken from the manifest's directory; a missing
/// workspace defaults to the Dockerfile's directory. Throws ManifestFault.
std::vector<CorpusCase> load_manifest(const std::filesystem::path& path);

struct Counts {
  int tp = 0;
  int fp = 0;
  int fn = 0;

  Counts& operator+=(const Counts& o);
  friend bool operator==(const Counts&, const Counts&) = default;
};

struct CaseResult {
  std::string name;
  Counts counts;
  std::vector<Warning> warnings;
};

struct Metrics {
  Counts total;
  /// Undefined (nullopt) when the denominator is zero.
  std::optional<double> recall;
  std::optional<double> precision;
  std::map<FaultType, Counts> per_fault_type;
  std::vector<CaseResult> cases;
};

inline constexpr const char* kMatchingRule =
    "a warning matches a label iff fault type and line are equal";

/// Matches warnings to labels one to one by (line, fault type).
/// `per_type` receives the split by fault type when given.
Counts match_warnings(const std::vector<Warning>& warnings, const std::vector<FaultLabel>& labels,
                      std::map<FaultType, Counts>* per_type = nullptr);

Metrics compute_metrics(std::vector<CaseResult> cases,
                        const std::vector<std::vector<FaultLabel>>& labels);

/// Analyzes every case, `jobs` at a time. Throws ManifestFault when a case
/// cannot be read.
Metrics evaluate(const std::vector<CorpusCase>& cases, AnalysisOptions options = {}, unsigned jobs = 0);
Metrics evaluate(const std::filesystem::path& manifest, AnalysisOptions options = {}, unsigned jobs = 0);

std::string metrics_json(const Metrics& m);
std::string metrics_text(const Metrics& m);

}  // namespace dockmock
