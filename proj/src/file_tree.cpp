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

#include "dockmock/file_tree.hpp"

#include "dockmock/faults.hpp"

namespace dockmock {

FileNode FileNode::directory(bool fuzzy) {
  FileNode n;
  n.kind = NodeKind::Directory;
  n.fuzzy = fuzzy;
  return n;
}

FileNode FileNode::regular(bool fuzzy) {
  FileNode n;
  n.kind = NodeKind::Regular;
  n.fuzzy = fuzzy;
  return n;
}

std::vector<std::string> path_components(std::string_view path) {
  std::vector<std::string> parts;
  size_t i = 0;
  while (i < path.size()) {
    while (i < path.size() && path[i] == '/') ++i;
    size_t end = path.find('/', i);
    if (end == std::string_view::npos) end = path.size();
    if (end > i) parts.emplace_back(path.substr(i, end - i));
    i = end;
  }
  return parts;
}

std::string join_components(const std::vector<std::string>& parts) {
  if (parts.empty()) return "/";
  std::string out;
  for (const auto& p : parts) {
    out += '/';
    out += p;
  }
  return out;
}

std::string normalize_path(std::string_view path) {
  std::vector<std::string> out;
  for (auto& part : path_components(path)) {
    if (part == ".") continue;
    if (part == "..") {
      if (!out.empty()) out.pop_back();
      continue;
    }
    out.push_back(std::move(part));
  }
  return join_components(out);
}

std::string parent_path(std::string_view path) {
  auto parts = path_components(path);
  if (!parts.empty()) parts.pop_back();
  return join_components(parts);
}

std::string base_name(std::string_view path) {
  auto parts = path_components(path);
  return parts.empty() ? std::string() : parts.back();
}

std::string join_path(std::string_view dir, std::string_view name) {
  std::string out(dir);
  if (out.empty() || out.back() != '/') out += '/';
  out += name;
  return normalize_path(out);
}

ResolvedPath resolve_path(const ExpandedValue& p, const ExpandedValue& base) {
  if (!p.text.empty() && p.text.front() == '/') return {normalize_path(p.text), p.fuzzy};
  return {normalize_path(base.text + "/" + p.text), p.fuzzy || base.fuzzy};
}

StatResult stat(const FileNode& root, std::string_view path) {
  const FileNode* cur = &root;
  StatResult r;
  for (const auto& part : path_components(path)) {
    if (!cur->is_dir()) {
      r.status = cur->fuzzy ? StatResult::Status::AbsentFuzzy : StatResult::Status::AbsentPrecise;
      r.blocked_by_file = !cur->fuzzy;
      return r;
    }
    auto it = cur->children.find(part);
    if (it == cur->children.end()) {
      r.status = cur->fuzzy ? StatResult::Status::AbsentFuzzy : StatResult::Status::AbsentPrecise;
      return r;
    }
    cur = &it->second;
  }
  r.status = StatResult::Status::Found;
  r.kind = cur->kind;
  r.mode = cur->mode;
  r.fuzzy = cur->fuzzy;
  return r;
}

const FileNode* find_node(const FileNode& root, std::string_view path) {
  const FileNode* cur = &root;
  for (const auto& part : path_components(path)) {
    if (!cur->is_dir()) return nullptr;
    auto it = cur->children.find(part);
    if (it == cur->children.end()) return nullptr;
    cur = &it->second;
  }
  return cur;
}

FileNode* find_node(FileNode& root, std::string_view path) {
  return const_cast<FileNode*>(find_node(static_cast<const FileNode&>(root), path));
}

namespace {

// Walks to the parent directory of `path`, creating missing directories.
FileNode& ensure_parent(FileNode& root, const std::vector<std::string>& parts,
                        std::string_view path) {
  FileNode* cur = &root;
  std::string walked;
  for (size_t i = 0; i + 1 < parts.size(); ++i) {
    walked += "/" + parts[i];
    auto it = cur->children.find(parts[i]);
    if (it == cur->children.end()) {
      FileNode dir = FileNode::directory(cur->fuzzy);
      it = cur->children.emplace(parts[i], std::move(dir)).first;
    } else if (!it->second.is_dir()) {
      if (!it->second.fuzzy) {
        throw ConflictFault(FaultType::InnerFileNotFound, walked,
                            "cannot create '" + std::string(path) + "': '" + walked +
                                "' is not a directory");
      }
      // A fuzzy leaf of unknown kind may as well be a directory.
      it->second = FileNode::directory(true);
    }
    cur = &it->second;
  }
  return *cur;
}

void merge_into(FileNode& dst, const FileNode& src, const std::string& path) {
  if (dst.is_dir() && src.is_dir()) {
    dst.fuzzy = dst.fuzzy || src.fuzzy;
    if (src.mode) dst.mode = src.mode;
    for (const auto& [name, child] : src.children) {
      auto it = dst.children.find(name);
      if (it == dst.children.end()) {
        dst.children.emplace(name, child);
      } else {
        merge_into(it->second, child, path + "/" + name);
      }
    }
    return;
  }
  if (!dst.is_dir() && src.is_dir() && !dst.fuzzy) {
    throw ConflictFault(FaultType::CommandMisuse, path,
                        "cannot overwrite non-directory '" + path + "' with directory");
  }
  dst = src;
}

}  // namespace

void put_subtree(FileNode& root, std::string_view path, FileNode node) {
  auto parts = path_components(path);
  if (parts.empty()) {
    root = std::move(node);
    return;
  }
  FileNode& parent = ensure_parent(root, parts, path);
  parent.children[parts.back()] = std::move(node);
}

void put_node(FileNode& root, std::string_view path, NodeKind kind, bool fuzzy) {
  FileNode node;
  node.kind = kind;
  node.fuzzy = fuzzy;
  put_subtree(root, path, std::move(node));
}

void merge_subtree(FileNode& root, std::string_view path, const FileNode& node) {
  auto parts = path_components(path);
  if (parts.empty()) {
    merge_into(root, node, "/");
    return;
  }
  FileNode& parent = ensure_parent(root, parts, path);
  auto it = parent.children.find(parts.back());
  if (it == parent.children.end()) {
    parent.children.emplace(parts.back(), node);
  } else {
    merge_into(it->second, node, normalize_path(path));
  }
}

void copy_between_trees(const FileNode& src_tree, std::string_view src_path, FileNode& dst_tree,
                        std::string_view dst_path, bool dst_trailing_slash) {
  const FileNode* src = find_node(src_tree, src_path);
  if (src == nullptr) {
    throw ConflictFault(FaultType::InnerFileNotFound, std::string(src_path),
                        "'" + std::string(src_path) + "' does not exist");
  }
  std::string target(dst_path);
  if (dst_trailing_slash) target = join_path(dst_path, base_name(src_path));
  merge_subtree(dst_tree, target, *src);
}

bool remove_node(FileNode& root, std::string_view path) {
  auto parts = path_components(path);
  if (parts.empty()) {
    bool had = !root.children.empty();
    root.children.clear();
    return had;
  }
  std::string parent = parent_path(path);
  FileNode* dir = find_node(root, parent);
  if (dir == nullptr || !dir->is_dir()) return false;
  return dir->children.erase(parts.back()) > 0;
}

void mark_fuzzy_recursive(FileNode& node) {
  node.fuzzy = true;
  for (auto& [name, child] : node.children) mark_fuzzy_recursive(child);
}

void fuzz_path(FileNode& root, std::string_view path) {
  FileNode* cur = &root;
  for (const auto& part : path_components(path)) {
    if (!cur->is_dir()) {
      cur->fuzzy = true;
      return;
    }
    auto it = cur->children.find(part);
    if (it == cur->children.end()) {
      cur->fuzzy = true;
      return;
    }
    cur = &it->second;
  }
  mark_fuzzy_recursive(*cur);
}

void collect_leaves(const FileNode& node, const std::string& prefix,
                    std::vector<std::pair<std::string, NodeKind>>& out) {
  for (const auto& [name, child] : node.children) {
    std::string path = prefix + "/" + name;
    out.emplace_back(path, child.kind);
    if (child.is_dir()) collect_leaves(child, path, out);
  }
}

}  // namespace dockmock
