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

#include "dockmock/context.hpp"

#include <algorithm>

namespace dockmock {

namespace {

std::vector<std::string> split_colon(const std::string& text) {
  std::vector<std::string> out;
  size_t start = 0;
  while (start <= text.size()) {
    size_t end = text.find(':', start);
    if (end == std::string::npos) end = text.size();
    std::string part = text.substr(start, end - start);
    if (!part.empty()) out.push_back(normalize_path(part));
    start = end + 1;
  }
  return out;
}

const Workspace& empty_workspace() {
  static const Workspace ws;
  return ws;
}

}  // namespace

const FileNode& Context::workspace_root() const {
  return workspace ? workspace->root : empty_workspace().root;
}

const std::vector<std::string>& posix_builtins() {
  static const std::vector<std::string> names = {
      ".",      ":",     "[",       "alias",  "bg",     "break",  "cd",       "command",
      "continue", "echo", "eval",   "exec",   "exit",   "export", "false",    "fc",
      "fg",     "getopts", "hash",  "jobs",   "kill",   "local",  "printf",   "pwd",
      "read",   "readonly", "return", "set",  "shift",  "test",   "times",    "trap",
      "true",   "type",  "ulimit",  "umask",  "unalias", "unset", "wait",
  };
  return names;
}

Context fresh_context(std::shared_ptr<const Workspace> workspace) {
  Context ctx;
  ctx.workspace = std::move(workspace);
  ctx.vars.set_precise("PATH", kDefaultPath);
  ctx.vars.set_all_tracked(false);
  ctx.executables.names.insert(posix_builtins().begin(), posix_builtins().end());
  return ctx;
}

void fuzz_files(Context& ctx) {
  ctx.container_fuzzy = true;
  mark_fuzzy_recursive(ctx.container);
}

void fuzz_all(Context& ctx) {
  ctx.vars.set_all_tracked(false);
  fuzz_files(ctx);
  ctx.executables.fuzzy = true;
  ctx.workdir_fuzzy = true;
}

ResolvedPath resolve_path(const ExpandedValue& p, const Context& ctx) {
  return resolve_path(p, ctx.workdir_value());
}

ExecLookup lookup_executable(const ExpandedValue& name, const Context& ctx,
                             const ExpandedValue& cwd) {
  if (name.fuzzy) return ExecLookup::Fuzzy;
  if (name.text.empty()) return ExecLookup::NotFound;
  if (name.text.find('/') != std::string::npos) {
    ResolvedPath p = resolve_path(name, cwd);
    if (p.fuzzy) return ExecLookup::Fuzzy;
    StatResult st = stat(ctx.container, p.path);
    if (st.found()) return st.kind == NodeKind::Regular ? ExecLookup::Found : ExecLookup::Fuzzy;
    return st.absent_precise() ? ExecLookup::NotFound : ExecLookup::Fuzzy;
  }
  if (ctx.executables.names.count(name.text)) return ExecLookup::Found;
  return ctx.executables.fuzzy ? ExecLookup::Fuzzy : ExecLookup::NotFound;
}

ExecLookup lookup_executable(const ExpandedValue& name, const Context& ctx) {
  return lookup_executable(name, ctx, ctx.workdir_value());
}

ExpandedValue home_of(const VariableMap& vars) {
  VarLookup home = vars.lookup("HOME");
  switch (home.state) {
    case VarState::Precise:
      return {home.value, false};
    case VarState::Unset:
      return {"", false};
    case VarState::Fuzzy:
      break;
  }
  return {home.value, true};
}

std::optional<std::vector<std::string>> path_dirs(const VariableMap& vars) {
  VarLookup path = vars.lookup("PATH");
  if (path.state == VarState::Fuzzy) return std::nullopt;
  return split_colon(path.value);
}

void note_created_file(Context& ctx, const std::string& path) {
  auto dirs = path_dirs(ctx.vars);
  if (!dirs) return;
  std::string parent = parent_path(path);
  if (std::find(dirs->begin(), dirs->end(), parent) != dirs->end()) {
    ctx.executables.names.insert(base_name(path));
  }
}

void note_path_change(Context& ctx, const ExpandedValue& old_path,
                      const ExpandedValue& new_path) {
  if (new_path.fuzzy || old_path.fuzzy) {
    ctx.executables.fuzzy = true;
    return;
  }
  auto before = split_colon(old_path.text);
  for (const auto& dir : split_colon(new_path.text)) {
    if (std::find(before.begin(), before.end(), dir) != before.end()) continue;
    // Commands in a directory created during the build are tracked as
    // they appear; anything else may hold files we never saw.
    const FileNode* node = find_node(ctx.container, dir);
    if (node == nullptr || node->fuzzy || !node->is_dir()) {
      ctx.executables.fuzzy = true;
      return;
    }
    for (const auto& [name, child] : node->children) {
      if (!child.is_dir()) ctx.executables.names.insert(name);
    }
  }
}

}  // namespace dockmock
