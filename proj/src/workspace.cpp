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

#include <fstream>
#include <sstream>

#include "dockmock/faults.hpp"
#include "dockmock/workspace.hpp"

namespace fs = std::filesystem;

namespace dockmock {

namespace {

constexpr std::uintmax_t kManifestLimit = 1 << 20;

std::string read_text(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoFault("cannot read " + path.string());
  std::ostringstream out;
  out << in.rdbuf();
  return out.str();
}

void scan_dir(const fs::path& dir, const std::string& rel, const IgnoreRules& rules,
              FileNode& node, Workspace& ws) {
  std::error_code ec;
  fs::directory_iterator it(dir, ec);
  if (ec) throw IoFault("cannot read directory " + dir.string() + ": " + ec.message());
  for (const auto& entry : it) {
    std::string name = entry.path().filename().string();
    std::string child_rel = rel.empty() ? name : rel + "/" + name;
    if (!rules.empty() && rules.excluded(child_rel)) continue;
    auto status = entry.symlink_status(ec);
    if (ec) throw IoFault("cannot stat " + entry.path().string() + ": " + ec.message());
    FileNode child;
    child.mode = static_cast<uint16_t>(static_cast<unsigned>(status.permissions()) & 0777);
    if (fs::is_directory(status)) {
      child.kind = NodeKind::Directory;
      scan_dir(entry.path(), child_rel, rules, child, ws);
    } else {
      child.kind = NodeKind::Regular;
      if (fs::is_regular_file(status) && is_manifest_name(name) &&
          fs::file_size(entry.path(), ec) <= kManifestLimit && !ec) {
        ws.manifests["/" + child_rel] = read_text(entry.path());
      }
    }
    node.children.emplace(name, std::move(child));
  }
}

}  // namespace

bool is_manifest_name(std::string_view name) { return name == "Gemfile" || name == "go.mod"; }

Workspace scan_workspace(const fs::path& dir, const std::optional<IgnoreRules>& rules) {
  std::error_code ec;
  if (!fs::is_directory(dir, ec)) throw IoFault("workspace is not a directory: " + dir.string());
  IgnoreRules active;
  if (rules) {
    active = *rules;
  } else if (fs::is_regular_file(dir / ".dockerignore", ec)) {
    active = IgnoreRules::parse(read_text(dir / ".dockerignore"));
  }
  Workspace ws;
  scan_dir(dir, "", active, ws.root, ws);
  return ws;
}

}  // namespace dockmock
