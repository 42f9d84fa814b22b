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
#include <regex>
#include <string>
#include <string_view>
#include <vector>

#include "dockmock/file_tree.hpp"

namespace dockmock {

/// .dockerignore rules: path globs with `*`, `?`, `[...]`, `**` and `!`
/// exceptions. The last matching rule wins; a rule matching a parent
/// directory matches everything below it.
class IgnoreRules {
 public:
  static IgnoreRules parse(std::string_view text);

  /// `rel_path` is relative to the workspace root, '/'-separated.
  bool excluded(std::string_view rel_path) const;
  bool empty() const { return rules_.empty(); }

 private:
  struct Rule {
    std::string pattern;
    std::regex regex;
    bool exception = false;
  };
  std::vector<Rule> rules_;
};

/// The read-only project directory as seen by COPY and ADD.
struct Workspace {
  FileNode root = FileNode::directory();
  /// Text of version manifests (Gemfile, go.mod), keyed by absolute
  /// workspace path such as "/go.mod".
  std::map<std::string, std::string> manifests;
};

/// Names whose content is kept for version checks.
bool is_manifest_name(std::string_view name);

/// Mirrors `dir` into a fully precise tree. When `rules` is not given,
/// `dir/.dockerignore` is read if present. Throws IoFault.
Workspace scan_workspace(const std::filesystem::path& dir,
                         const std::optional<IgnoreRules>& rules = std::nullopt);

}  // namespace dockmock
