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

#include <memory>
#include <string_view>
#include <vector>

#include "dockmock/context.hpp"
#include "dockmock/dockerfile.hpp"
#include "dockmock/mocks.hpp"
#include "dockmock/prior.hpp"
#include "dockmock/workspace.hpp"

namespace dockmock {

struct InstructionOutcome {
  int line = 0;
  Keyword keyword = Keyword::Unknown;
  MockStatus status = MockStatus::PreciseOk;
};

struct AnalysisReport {
  /// Ordered by line, then discovery order; (type, line, subject) unique.
  std::vector<Warning> warnings;
  std::vector<InstructionOutcome> outcomes;
  Context context_final;
};

/// Mocks every instruction in order, carrying the context between them.
/// Conflicts are recorded and followed by their auto-fix; Fuzzy results
/// carry no warnings. Stateless and safe to call concurrently.
AnalysisReport analyze(const DockerfileAst& ast, std::shared_ptr<const Workspace> workspace,
                       const SnapshotStore* priors = nullptr, AnalysisOptions options = {},
                       const MockRegistry* registry = nullptr);

/// Parses and analyzes; a parse failure yields one SyntaxMistake.
AnalysisReport analyze_text(std::string_view dockerfile, std::shared_ptr<const Workspace> workspace,
                            const SnapshotStore* priors = nullptr, AnalysisOptions options = {},
                            const MockRegistry* registry = nullptr);

}  // namespace dockmock
