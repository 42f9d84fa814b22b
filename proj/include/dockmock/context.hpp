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
#include <set>
#include <string>
#include <vector>

#include "dockmock/file_tree.hpp"
#include "dockmock/variables.hpp"
#include "dockmock/workspace.hpp"

namespace dockmock {

inline constexpr const char* kDefaultPath =
    "/usr/local/sbin:/usr/local/bin:/usr/sbin:/usr/bin:/sbin:/bin";

/// Command names invocable through PATH plus shell built-ins. When `fuzzy`
/// is false a name outside `names` is definitely not invocable.
struct ExecutableList {
  std::set<std::string> names;
  bool fuzzy = false;

  friend bool operator==(const ExecutableList&, const ExecutableList&) = default;
};

/// The mock build state threaded between instructions.
struct Context {
  VariableMap vars;
  FileNode container = FileNode::directory();
  bool container_fuzzy = false;
  std::shared_ptr<const Workspace> workspace;
  ExecutableList executables;
  std::string workdir = "/";
  bool workdir_fuzzy = false;
  std::string user = "root";
  /// Normalized reference of the stage's base image; empty when unknown.
  std::string image;
  /// False after a SHELL instruction selecting a non-POSIX shell.
  bool posix_shell = true;
  /// The base image version was already checked against a manifest.
  bool version_checked = false;

  const FileNode& workspace_root() const;
  ExpandedValue workdir_value() const { return {workdir, workdir_fuzzy}; }

  friend bool operator==(const Context&, const Context&) = default;
};

/// Shell built-ins every POSIX `sh` provides.
const std::vector<std::string>& posix_builtins();

/// Precise empty container, default PATH, workdir "/", user root and the
/// built-ins as the executable list. Variables beyond PATH are unknown.
Context fresh_context(std::shared_ptr<const Workspace> workspace = nullptr);

/// Marks every part of the context except the workspace fuzzy.
void fuzz_all(Context& ctx);

/// Marks the container file tree fuzzy, leaving the rest untouched.
void fuzz_files(Context& ctx);

ResolvedPath resolve_path(const ExpandedValue& p, const Context& ctx);

enum class ExecLookup { Found, NotFound, Fuzzy };

/// `cwd` resolves names containing a slash.
ExecLookup lookup_executable(const ExpandedValue& name, const Context& ctx,
                             const ExpandedValue& cwd);
ExecLookup lookup_executable(const ExpandedValue& name, const Context& ctx);

ExpandedValue home_of(const VariableMap& vars);

/// Directories on PATH; nullopt when PATH is not precise.
std::optional<std::vector<std::string>> path_dirs(const VariableMap& vars);

/// Records a regular file created at `path` as an executable when it lands
/// in a PATH directory.
void note_created_file(Context& ctx, const std::string& path);

/// Re-derives the executable list after PATH changed to `new_path`: a
/// directory that was not searched before may hold unknown commands.
void note_path_change(Context& ctx, const ExpandedValue& old_path, const ExpandedValue& new_path);

}  // namespace dockmock
