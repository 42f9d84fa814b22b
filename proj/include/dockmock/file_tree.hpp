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

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "dockmock/variables.hpp"

namespace dockmock {

enum class NodeKind { Regular, Directory };

/// A node of a mock file tree. Only existence, type and mode are modeled.
///
/// A fuzzy directory may hold children that are not tracked; a fuzzy
/// regular file has unknown attributes. Conflicts are never derived from a
/// fuzzy node.
struct FileNode {
  NodeKind kind = NodeKind::Directory;
  std::map<std::string, FileNode> children;
  std::optional<uint16_t> mode;
  bool fuzzy = false;
  /// Workspace path this node was copied from, if any.
  std::string origin;

  static FileNode directory(bool fuzzy = false);
  static FileNode regular(bool fuzzy = false);

  bool is_dir() const { return kind == NodeKind::Directory; }

  friend bool operator==(const FileNode&, const FileNode&) = default;
};

struct StatResult {
  enum class Status { Found, AbsentPrecise, AbsentFuzzy };

  Status status = Status::AbsentFuzzy;
  NodeKind kind = NodeKind::Regular;
  std::optional<uint16_t> mode;
  bool fuzzy = false;
  /// Absent because a component on the way is a regular file.
  bool blocked_by_file = false;

  bool found() const { return status == Status::Found; }
  bool absent_precise() const { return status == Status::AbsentPrecise; }
  bool absent_fuzzy() const { return status == Status::AbsentFuzzy; }
  bool precise_dir() const { return found() && kind == NodeKind::Directory && !fuzzy; }
  bool precise_file() const { return found() && kind == NodeKind::Regular && !fuzzy; }
};

/// Splits an absolute, normalized path into its components.
std::vector<std::string> path_components(std::string_view path);
std::string join_components(const std::vector<std::string>& parts);
/// Lexical normalization: duplicate separators, "." and ".." removed.
std::string normalize_path(std::string_view path);
std::string parent_path(std::string_view path);
std::string base_name(std::string_view path);
std::string join_path(std::string_view dir, std::string_view name);

struct ResolvedPath {
  std::string path;
  bool fuzzy = false;
};

/// Joins `p` onto `base` when relative, then normalizes.
ResolvedPath resolve_path(const ExpandedValue& p, const ExpandedValue& base);

/// Absence is precise only when the directory that lacks the next
/// component is itself precise.
StatResult stat(const FileNode& root, std::string_view path);

const FileNode* find_node(const FileNode& root, std::string_view path);
FileNode* find_node(FileNode& root, std::string_view path);

/// Places `node` at `path`, replacing whatever is there. Missing
/// intermediate directories inherit the fuzziness of their parent. Throws
/// ConflictFault when a precise ancestor is a regular file.
void put_subtree(FileNode& root, std::string_view path, FileNode node);
void put_node(FileNode& root, std::string_view path, NodeKind kind, bool fuzzy);

/// Like put_subtree, but a directory landing on an existing directory is
/// merged into it recursively.
void merge_subtree(FileNode& root, std::string_view path, const FileNode& node);

/// Copies the node at `src_path` of `src_tree` to `dst_path`, or into
/// `dst_path/` when `dst_trailing_slash` is set.
void copy_between_trees(const FileNode& src_tree, std::string_view src_path, FileNode& dst_tree,
                        std::string_view dst_path, bool dst_trailing_slash);

/// Removes the node at `path`; returns false when nothing was there.
bool remove_node(FileNode& root, std::string_view path);

void mark_fuzzy_recursive(FileNode& node);

/// Marks `path` fuzzy: the whole subtree when it exists, else the deepest
/// existing directory on the way (it may have gained untracked children).
void fuzz_path(FileNode& root, std::string_view path);

/// Every regular node below `node`, as paths relative to it.
void collect_leaves(const FileNode& node, const std::string& prefix,
                    std::vector<std::pair<std::string, NodeKind>>& out);

}  // namespace dockmock
