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

// Shell command mocks and the interpreter that strings them together.

#include <fnmatch.h>

#include <algorithm>
#include <optional>

#include "dockmock/log.hpp"
#include "dockmock/mocks.hpp"
#include "mock_handlers.hpp"

namespace dockmock {

namespace {

std::string squote(const std::string& s) { return "'" + s + "'"; }

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool is_inside(const std::string& path, const std::string& dir) {
  return path == dir || (dir == "/" ? true : starts_with(path, dir + "/"));
}

bool parent_is_dir(const FileNode& root, const std::string& path) {
  const FileNode* parent = find_node(root, parent_path(path));
  return parent != nullptr && parent->is_dir();
}

std::string first_subcommand(const std::vector<ExpandedValue>& argv) {
  for (size_t i = 1; i < argv.size(); ++i) {
    if (!argv[i].text.empty() && argv[i].text[0] != '-') return argv[i].text;
  }
  return {};
}

// Positional operands after the subcommand.
std::vector<ExpandedValue> after_subcommand(const ParsedArgs& args) {
  if (args.operands.empty()) return {};
  return {args.operands.begin() + 1, args.operands.end()};
}

// Checks that `name` exists in the working directory; a precise absence is
// an InnerFileNotFound conflict, fixed by a fuzzy placeholder.
void require_file(MockFs& fs, const ExpandedValue& name, const std::string& message) {
  ResolvedPath rp = fs.resolve(name);
  StatResult st = fs.stat(rp);
  if (st.absent_precise()) {
    fs.conflict(FaultType::InnerFileNotFound, rp.path, message + ": " + squote(rp.path));
    place_fuzzy(fs.ctx, rp.path, NodeKind::Regular);
  } else if (st.absent_fuzzy()) {
    fs.result.presume();
  }
}

// The manifest text a copied file came from, if any.
const std::string* origin_manifest(const Context& ctx, const std::string& path) {
  const FileNode* n = find_node(ctx.container, path);
  if (n == nullptr || n->origin.empty() || !ctx.workspace) return nullptr;
  auto it = ctx.workspace->manifests.find(n->origin);
  return it == ctx.workspace->manifests.end() ? nullptr : &it->second;
}

void version_check_in_cwd(Toolchain tc, MockFs& fs) {
  if (fs.ctx.version_checked || fs.session.cwd_fuzzy) return;
  std::string manifest = join_path(fs.session.cwd, manifest_name(tc));
  const std::string* text = origin_manifest(fs.ctx, manifest);
  if (text == nullptr) return;
  MockResult r = mock_version_check(tc, fs.ctx, fs.line, text);
  for (auto& w : r.warnings) fs.result.conflict(w);
  if (r.exit_fuzzy) fs.result.uncertain_exit();
}

std::optional<uint16_t> apply_symbolic_mode(std::string_view spec, std::optional<uint16_t> current,
                                            bool is_dir, bool* valid) {
  *valid = true;
  bool all_digits = !spec.empty() && std::all_of(spec.begin(), spec.end(),
                                                 [](char c) { return c >= '0' && c <= '7'; });
  if (all_digits) {
    if (spec.size() > 4) {
      *valid = false;
      return current;
    }
    return static_cast<uint16_t>(std::stoi(std::string(spec), nullptr, 8) & 07777);
  }
  std::optional<uint16_t> mode = current;
  size_t i = 0;
  while (i <= spec.size()) {
    size_t end = spec.find(',', i);
    if (end == std::string_view::npos) end = spec.size();
    std::string_view clause = spec.substr(i, end - i);
    size_t k = 0;
    unsigned who = 0;
    while (k < clause.size() && std::string_view("ugoa").find(clause[k]) != std::string_view::npos) {
      switch (clause[k]) {
        case 'u': who |= 04700; break;
        case 'g': who |= 02070; break;
        case 'o': who |= 01007; break;
        default: who |= 07777; break;
      }
      ++k;
    }
    bool implicit_who = who == 0;
    if (implicit_who) who = 07777;
    if (k >= clause.size()) {
      *valid = false;
      return current;
    }
    while (k < clause.size()) {
      char op = clause[k++];
      if (op != '+' && op != '-' && op != '=') {
        *valid = false;
        return current;
      }
      unsigned bits = 0;
      bool needs_current = false;
      while (k < clause.size() && std::string_view("rwxXst").find(clause[k]) != std::string_view::npos) {
        switch (clause[k]) {
          case 'r': bits |= 0444; break;
          case 'w': bits |= 0222; break;
          case 'x': bits |= 0111; break;
          case 'X':
            if (is_dir) {
              bits |= 0111;
            } else {
              needs_current = true;
            }
            break;
          case 's': bits |= 06000; break;
          default: bits |= 01000; break;
        }
        ++k;
      }
      bits &= who;
      // An implicit "all" honors the umask, which we do not model.
      if (implicit_who && op != '-') needs_current = true;
      if (needs_current || (op != '=' && !mode)) {
        mode.reset();
        continue;
      }
      if (op == '=') {
        mode = static_cast<uint16_t>(((mode ? *mode : 0) & ~who) | bits);
      } else if (op == '+') {
        mode = static_cast<uint16_t>(*mode | bits);
      } else {
        mode = static_cast<uint16_t>(*mode & ~bits);
      }
    }
    if (end == spec.size()) break;
    i = end + 1;
  }
  return mode;
}

void set_mode(FileNode& node, const std::string& spec, bool recursive, bool* valid) {
  node.mode = apply_symbolic_mode(spec, node.mode, node.is_dir(), valid);
  if (!recursive) return;
  for (auto& [name, child] : node.children) set_mode(child, spec, true, valid);
}

// Destination handling shared by cp and mv.
struct Transfer {
  std::vector<ExpandedValue> sources;
  ExpandedValue dest;
  bool dest_is_dir = false;
  bool ok = true;
};

Transfer plan_transfer(MockFs& fs, const ParsedArgs& args, const char* tool) {
  Transfer t;
  auto target_dir = args.values.find('t');
  if (target_dir != args.values.end()) {
    t.dest = {target_dir->second, false};
    t.sources = args.operands;
  } else {
    if (args.operands.size() < 2) {
      fs.conflict(FaultType::CommandMisuse, tool,
                  std::string(tool) + ": missing destination file operand");
      t.ok = false;
      return t;
    }
    t.dest = args.operands.back();
    t.sources.assign(args.operands.begin(), args.operands.end() - 1);
  }
  ResolvedPath drp = fs.resolve(t.dest);
  StatResult dst = fs.stat(drp);
  t.dest_is_dir = dst.found() && dst.kind == NodeKind::Directory && !args.has('T');
  if (t.sources.size() > 1 || target_dir != args.values.end()) {
    if (!t.dest_is_dir) {
      if (dst.absent_fuzzy() || (dst.found() && dst.fuzzy)) {
        fs.result.presume();
        place_fuzzy(fs.ctx, drp.path, NodeKind::Directory);
        t.dest_is_dir = true;
      } else {
        fs.conflict(FaultType::CommandMisuse, drp.path,
                    std::string(tool) + ": target " + squote(t.dest.text) + " is not a directory");
        t.ok = false;
      }
    }
  }
  return t;
}

bool has_children(const FileNode& n) { return n.fuzzy || !n.children.empty(); }

}  // namespace

// Creates `path` as a fuzzy node along with any missing directories on the
// way, all fuzzy. Used by auto-fixes: the node stands for something a
// corrected Dockerfile would provide.
void place_fuzzy(Context& ctx, const std::string& path, NodeKind kind) {
  FileNode* cur = &ctx.container;
  auto parts = path_components(path);
  for (size_t i = 0; i < parts.size(); ++i) {
    if (!cur->is_dir()) {
      if (!cur->fuzzy) return;
      *cur = FileNode::directory(true);
    }
    auto it = cur->children.find(parts[i]);
    if (it == cur->children.end()) {
      FileNode n = (i + 1 == parts.size() && kind == NodeKind::Regular) ? FileNode::regular(true)
                                                                          : FileNode::directory(true);
      it = cur->children.emplace(parts[i], std::move(n)).first;
    }
    cur = &it->second;
  }
  mark_fuzzy_recursive(*cur);
  if (kind == NodeKind::Regular && !cur->is_dir()) note_created_file(ctx, path);
}

namespace handlers {

MockResult cd(const CommandCall& call, Context& ctx, ShellSession& session) {
  MockResult r;
  MockFs fs(ctx, session, r, call.line);
  ParsedArgs args = parse_args(call.argv);
  ExpandedValue target;
  if (args.operands.empty()) {
    target = home_of(session.vars);
    if (target.text.empty() && !target.fuzzy) return r;
  } else if (args.operands[0].text == "-") {
    VarLookup old = session.vars.lookup("OLDPWD");
    target = {old.value, old.state != VarState::Precise};
  } else {
    target = args.operands[0];
  }
  ResolvedPath rp = fs.resolve(target);
  StatResult st = fs.stat(rp);
  bool fuzzy_cwd = rp.fuzzy || session.uncertain;
  if (st.found()) {
    if (st.kind == NodeKind::Regular) {
      if (st.fuzzy) {
        r.presume();
      } else {
        fs.conflict(FaultType::InnerFileNotFound, rp.path,
                    "cd: can't cd to " + target.text + ": not a directory");
        fuzzy_cwd = true;
      }
    }
  } else if (st.absent_precise()) {
    fs.conflict(FaultType::InnerFileNotFound, rp.path,
                "cd: can't cd to " + target.text + ": no such directory");
    place_fuzzy(ctx, rp.path, NodeKind::Directory);
    fuzzy_cwd = true;
  } else {
    r.presume();
  }
  session.vars.set("OLDPWD", session.cwd_value());
  session.cwd = rp.path;
  session.cwd_fuzzy = fuzzy_cwd;
  session.vars.set("PWD", session.cwd_value());
  return r;
}

MockResult chmod(const CommandCall& call, Context& ctx, ShellSession& session) {
  MockResult r;
  MockFs fs(ctx, session, r, call.line);
  bool recursive = false;
  bool unknown_flag = false;
  bool options_done = false;
  std::optional<ExpandedValue> mode;
  std::vector<ExpandedValue> files;
  for (size_t i = 1; i < call.argv.size(); ++i) {
    const ExpandedValue& a = call.argv[i];
    if (!options_done && !a.fuzzy && a.text.size() > 1 && a.text[0] == '-') {
      if (a.text == "--") {
        options_done = true;
      } else if (a.text == "-R" || a.text == "--recursive") {
        recursive = true;
      } else if (!mode && a.text.find_first_not_of("rwxXst", 1) == std::string::npos) {
        mode = a;
      } else if (a.text == "-v" || a.text == "-c" || a.text == "-f" || a.text == "--verbose" ||
                 a.text == "--changes" || a.text == "--silent" || a.text == "--quiet") {
        continue;
      } else {
        unknown_flag = true;
      }
      continue;
    }
    if (!mode) {
      mode = a;
    } else {
      files.push_back(a);
    }
  }
  if (!mode || files.empty()) {
    if (unknown_flag) {
      r.uncertain_exit();
      return r;
    }
    fs.conflict(FaultType::CommandMisuse, "chmod", "chmod: missing operand");
    return r;
  }
  if (unknown_flag || mode->fuzzy) r.uncertain_exit();
  for (const auto& f : files) {
    ResolvedPath rp = fs.resolve(f);
    StatResult st = fs.stat(rp);
    if (st.absent_precise()) {
      fs.conflict(FaultType::InnerFileNotFound, rp.path,
                  "chmod: cannot access " + squote(f.text) + ": No such file or directory");
      continue;
    }
    if (st.absent_fuzzy()) {
      r.presume();
      continue;
    }
    FileNode* node = find_node(ctx.container, rp.path);
    if (node == nullptr) continue;
    if (mode->fuzzy || unknown_flag || rp.fuzzy) {
      node->mode.reset();
      continue;
    }
    bool valid = true;
    set_mode(*node, mode->text, recursive, &valid);
    if (!valid) {
      fs.conflict(FaultType::CommandMisuse, mode->text, "chmod: invalid mode: " + squote(mode->text));
      return r;
    }
    if (session.uncertain) node->mode.reset();
  }
  return r;
}

MockResult cp(const CommandCall& call, Context& ctx, ShellSession& session) {
  MockResult r;
  MockFs fs(ctx, session, r, call.line);
  ParsedArgs args = parse_args(call.argv, "tS");
  bool recursive = args.has('r') || args.has('R') || args.has('a') ||
                   args.has_long("--recursive") || args.has_long("--archive");
  Transfer t = plan_transfer(fs, args, "cp");
  if (!t.ok) return r;
  ResolvedPath drp = fs.resolve(t.dest);
  bool trailing_slash = ends_with(t.dest.text, "/");
  for (const auto& src : t.sources) {
    ResolvedPath srp = fs.resolve(src);
    StatResult sst = fs.stat(srp);
    ResolvedPath target = drp;
    if (t.dest_is_dir) target = {join_path(drp.path, base_name(srp.path)), drp.fuzzy || srp.fuzzy};
    if (sst.absent_precise()) {
      fs.conflict(FaultType::InnerFileNotFound, srp.path,
                  "cp: cannot stat " + squote(src.text) + ": No such file or directory");
      place_fuzzy(ctx, target.path, NodeKind::Regular);
      continue;
    }
    if (sst.absent_fuzzy()) {
      r.presume();
      place_fuzzy(ctx, target.path, NodeKind::Regular);
      continue;
    }
    if (sst.fuzzy && sst.kind == NodeKind::Regular) r.presume();
    bool src_dir = sst.kind == NodeKind::Directory;
    if (trailing_slash && !t.dest_is_dir) {
      StatResult dst = fs.stat(drp);
      if (dst.absent_precise() || (dst.found() && !dst.fuzzy)) {
        fs.conflict(FaultType::InnerFileNotFound, drp.path,
                    "cp: cannot create " + squote(t.dest.text) + ": Not a directory");
        continue;
      }
      r.presume();
    }
    if (target.path == srp.path) {
      fs.conflict(FaultType::CommandMisuse, srp.path,
                  "cp: " + squote(src.text) + " and " + squote(target.path) + " are the same file");
      continue;
    }
    if (src_dir && recursive && is_inside(target.path, srp.path)) {
      fs.conflict(FaultType::CommandMisuse, srp.path,
                  "cp: cannot copy a directory, " + squote(src.text) + ", into itself");
      // cp still copies what it read before noticing
      place_fuzzy(ctx, target.path, NodeKind::Directory);
      continue;
    }
    bool fixed = false;
    if (src_dir && !recursive) {
      fs.conflict(FaultType::CommandMisuse, srp.path,
                  "cp: -r not specified; omitting directory " + squote(src.text));
      fixed = true;
    }
    StatResult tst = fs.stat(target);
    if (tst.found()) {
      if (tst.kind == NodeKind::Directory && !src_dir) {
        fs.conflict(FaultType::CommandMisuse, target.path,
                    "cp: cannot overwrite directory " + squote(target.path) + " with non-directory");
        continue;
      }
      if (tst.kind == NodeKind::Regular && src_dir && !tst.fuzzy) {
        fs.conflict(FaultType::CommandMisuse, target.path,
                    "cp: cannot overwrite non-directory " + squote(target.path) + " with directory");
        continue;
      }
      if (tst.fuzzy) r.presume();
    } else if (tst.absent_precise()) {
      if (!parent_is_dir(ctx.container, target.path)) {
        fs.conflict(FaultType::InnerFileNotFound, target.path,
                    "cp: cannot create " + squote(target.path) + ": No such file or directory");
        place_fuzzy(ctx, target.path, src_dir ? NodeKind::Directory : NodeKind::Regular);
        continue;
      }
    } else {
      r.presume();
    }
    FileNode copy = *find_node(ctx.container, srp.path);
    if (fixed || target.fuzzy || session.uncertain) mark_fuzzy_recursive(copy);
    try {
      if (tst.found() && tst.kind == NodeKind::Directory) {
        merge_subtree(ctx.container, target.path, copy);
      } else {
        put_subtree(ctx.container, target.path, std::move(copy));
      }
    } catch (const ConflictFault& e) {
      fs.conflict(e.type(), e.path(), std::string("cp: ") + e.what());
      continue;
    }
    if (!src_dir) {
      note_created_file(ctx, target.path);
    } else if (const FileNode* placed = find_node(ctx.container, target.path)) {
      for (const auto& [name, child] : placed->children) {
        if (!child.is_dir()) note_created_file(ctx, join_path(target.path, name));
      }
    }
  }
  return r;
}

MockResult echo(const CommandCall&, Context&, ShellSession&) { return MockResult::ok(); }

MockResult env(const CommandCall& call, Context&, ShellSession& session) {
  size_t i = 1;
  MockResult r;
  while (i < call.argv.size()) {
    const std::string& a = call.argv[i].text;
    if (a == "--") {
      ++i;
      break;
    }
    if (a == "-i" || a == "--ignore-environment" || a == "-") {
      ++i;
    } else if (a == "-u") {
      i += 2;
    } else if (a.size() > 1 && a[0] == '-') {
      r.uncertain_exit();
      ++i;
    } else {
      break;
    }
  }
  bool path_assigned = false;
  while (i < call.argv.size() && call.argv[i].text.find('=') != std::string::npos &&
         shell::is_valid_name(call.argv[i].text.substr(0, call.argv[i].text.find('=')))) {
    if (starts_with(call.argv[i].text, "PATH=")) path_assigned = true;
    ++i;
  }
  if (i >= call.argv.size() || !call.run_nested) return r;
  std::vector<ExpandedValue> nested(call.argv.begin() + static_cast<long>(i), call.argv.end());
  bool saved = session.path_changed;
  if (path_assigned) session.path_changed = true;
  MockResult inner = call.run_nested(nested);
  session.path_changed = saved || session.path_changed != path_assigned;
  if (!path_assigned) session.path_changed = saved;
  inner.exit_fuzzy = inner.exit_fuzzy || r.exit_fuzzy;
  return inner;
}

MockResult export_(const CommandCall& call, Context& ctx, ShellSession& session) {
  MockResult r;
  MockFs fs(ctx, session, r, call.line);
  for (size_t i = 1; i < call.argv.size(); ++i) {
    const ExpandedValue& a = call.argv[i];
    if (a.text == "-p" || a.text == "-n") continue;
    size_t eq = a.text.find('=');
    std::string name = a.text.substr(0, eq);
    if (!shell::is_valid_name(name)) {
      if (a.fuzzy) {
        r.uncertain_exit();
        continue;
      }
      fs.conflict(FaultType::CommandMisuse, name, "export: " + name + ": bad variable name");
      return r;
    }
    if (eq == std::string::npos) continue;
    ExpandedValue value{a.text.substr(eq + 1), a.fuzzy || session.uncertain};
    session.vars.set(name, value);
    if (name == "PATH") session.path_changed = true;
  }
  return r;
}

MockResult mv(const CommandCall& call, Context& ctx, ShellSession& session) {
  MockResult r;
  MockFs fs(ctx, session, r, call.line);
  ParsedArgs args = parse_args(call.argv, "tS");
  Transfer t = plan_transfer(fs, args, "mv");
  if (!t.ok) return r;
  ResolvedPath drp = fs.resolve(t.dest);
  for (const auto& src : t.sources) {
    ResolvedPath srp = fs.resolve(src);
    StatResult sst = fs.stat(srp);
    ResolvedPath target = drp;
    if (t.dest_is_dir) target = {join_path(drp.path, base_name(srp.path)), drp.fuzzy || srp.fuzzy};
    if (sst.absent_precise()) {
      fs.conflict(FaultType::InnerFileNotFound, srp.path,
                  "mv: cannot stat " + squote(src.text) + ": No such file or directory");
      place_fuzzy(ctx, target.path, NodeKind::Regular);
      continue;
    }
    if (sst.absent_fuzzy()) {
      r.presume();
      place_fuzzy(ctx, target.path, NodeKind::Regular);
      continue;
    }
    if (sst.fuzzy) r.presume();
    bool src_dir = sst.kind == NodeKind::Directory;
    if (target.path == srp.path) {
      fs.conflict(FaultType::CommandMisuse, srp.path,
                  "mv: " + squote(src.text) + " and " + squote(target.path) + " are the same file");
      continue;
    }
    if (src_dir && is_inside(target.path, srp.path)) {
      fs.conflict(FaultType::CommandMisuse, srp.path,
                  "mv: cannot move " + squote(src.text) + " to a subdirectory of itself");
      continue;
    }
    if (srp.path == "/" || is_inside(session.cwd, srp.path)) r.uncertain_exit();
    StatResult tst = fs.stat(target);
    if (tst.found()) {
      const FileNode* tnode = find_node(ctx.container, target.path);
      if (tst.kind == NodeKind::Directory && !src_dir) {
        fs.conflict(FaultType::CommandMisuse, target.path,
                    "mv: cannot overwrite directory " + squote(target.path) + " with non-directory");
        continue;
      }
      if (tst.kind == NodeKind::Regular && src_dir && !tst.fuzzy) {
        fs.conflict(FaultType::CommandMisuse, target.path,
                    "mv: cannot overwrite non-directory " + squote(target.path) + " with directory");
        continue;
      }
      if (tst.kind == NodeKind::Directory && src_dir && tnode != nullptr && has_children(*tnode)) {
        if (tnode->fuzzy || tst.fuzzy) {
          r.presume();
        } else {
          fs.conflict(FaultType::CommandMisuse, target.path,
                      "mv: cannot move " + squote(src.text) + " to " + squote(target.path) +
                          ": Directory not empty");
          continue;
        }
      }
      if (tst.fuzzy) r.presume();
    } else if (tst.absent_precise()) {
      if (!parent_is_dir(ctx.container, target.path)) {
        fs.conflict(FaultType::InnerFileNotFound, target.path,
                    "mv: cannot move " + squote(src.text) + " to " + squote(target.path) +
                        ": No such file or directory");
        continue;
      }
    } else {
      r.presume();
    }
    FileNode moved = *find_node(ctx.container, srp.path);
    if (target.fuzzy || session.uncertain) mark_fuzzy_recursive(moved);
    fs.remove(srp);
    try {
      put_subtree(ctx.container, target.path, std::move(moved));
    } catch (const ConflictFault& e) {
      fs.conflict(e.type(), e.path(), std::string("mv: ") + e.what());
      continue;
    }
    if (!src_dir) note_created_file(ctx, target.path);
  }
  return r;
}

MockResult mkdir(const CommandCall& call, Context& ctx, ShellSession& session) {
  MockResult r;
  MockFs fs(ctx, session, r, call.line);
  ParsedArgs args = parse_args(call.argv, "m");
  bool parents = args.has('p') || args.has_long("--parents");
  std::optional<std::string> mode;
  if (auto it = args.values.find('m'); it != args.values.end()) mode = it->second;
  if (args.operands.empty()) {
    fs.conflict(FaultType::CommandMisuse, "mkdir", "mkdir: missing operand");
    return r;
  }
  for (const auto& op : args.operands) {
    ResolvedPath rp = fs.resolve(op);
    StatResult st = fs.stat(rp);
    if (st.found()) {
      if (parents && st.kind == NodeKind::Directory) continue;
      if (st.fuzzy && st.kind == NodeKind::Regular) {
        r.presume();
        fs.create(rp, FileNode::directory(true));
        continue;
      }
      if (rp.fuzzy) {
        r.presume();
        continue;
      }
      fs.conflict(FaultType::CommandMisuse, rp.path,
                  "mkdir: cannot create directory " + squote(op.text) + ": File exists");
      continue;
    }
    if (st.absent_precise()) {
      if (st.blocked_by_file) {
        fs.conflict(FaultType::InnerFileNotFound, rp.path,
                    "mkdir: cannot create directory " + squote(op.text) + ": Not a directory");
        continue;
      }
      if (!parents && !parent_is_dir(ctx.container, rp.path)) {
        fs.conflict(FaultType::InnerFileNotFound, rp.path,
                    "mkdir: cannot create directory " + squote(op.text) +
                        ": No such file or directory");
        place_fuzzy(ctx, rp.path, NodeKind::Directory);
        continue;
      }
    } else {
      // The directory may already exist in the image; presume it does not.
      r.presume();
    }
    FileNode dir = FileNode::directory();
    if (mode) {
      bool valid = true;
      dir.mode = apply_symbolic_mode(*mode, 0777, true, &valid);
    }
    fs.create(rp, std::move(dir));
  }
  return r;
}

MockResult pwd(const CommandCall&, Context&, ShellSession&) { return MockResult::ok(); }

MockResult rm(const CommandCall& call, Context& ctx, ShellSession& session) {
  MockResult r;
  MockFs fs(ctx, session, r, call.line);
  ParsedArgs args = parse_args(call.argv);
  bool recursive = args.has('r') || args.has('R') || args.has_long("--recursive");
  bool force = args.has('f') || args.has_long("--force");
  if (args.operands.empty()) {
    if (!force) fs.conflict(FaultType::CommandMisuse, "rm", "rm: missing operand");
    return r;
  }
  for (const auto& op : args.operands) {
    std::string last = op.text;
    while (last.size() > 1 && last.back() == '/') last.pop_back();
    last = last.substr(last.rfind('/') == std::string::npos ? 0 : last.rfind('/') + 1);
    if (!op.fuzzy && (last == "." || last == "..")) {
      fs.conflict(FaultType::CommandMisuse, op.text,
                  "rm: refusing to remove '.' or '..' directory: skipping " + squote(op.text));
      continue;
    }
    ResolvedPath rp = fs.resolve(op);
    StatResult st = fs.stat(rp);
    if (st.absent_precise()) {
      if (!force) {
        fs.conflict(FaultType::InnerFileNotFound, rp.path,
                    "rm: cannot remove " + squote(op.text) + ": No such file or directory");
      }
      continue;
    }
    if (st.absent_fuzzy()) {
      if (!force) r.presume();
      if (rp.fuzzy) fs.fuzz(rp);
      continue;
    }
    if (st.kind == NodeKind::Directory && !recursive) {
      const FileNode* n = fs.node(rp);
      if (args.has('d') && n != nullptr && !has_children(*n)) {
        fs.remove(rp);
        continue;
      }
      if (rp.fuzzy) {
        r.presume();
        fs.remove(rp);
        continue;
      }
      fs.conflict(FaultType::CommandMisuse, rp.path,
                  "rm: cannot remove " + squote(op.text) + ": Is a directory");
      fs.fuzz(rp);
      continue;
    }
    if (st.fuzzy && st.kind == NodeKind::Regular && !recursive) r.presume();
    if (is_inside(session.cwd, rp.path)) r.uncertain_exit();
    fs.remove(rp);
  }
  return r;
}

MockResult dot(const CommandCall& call, Context& ctx, ShellSession& session) {
  MockResult r;
  MockFs fs(ctx, session, r, call.line);
  r.uncertain_exit();
  if (call.argv.size() >= 2) {
    const ExpandedValue& script = call.argv[1];
    if (script.text.find('/') != std::string::npos || script.fuzzy) {
      ResolvedPath rp = fs.resolve(script);
      StatResult st = fs.stat(rp);
      if (st.absent_precise()) {
        fs.conflict(FaultType::InnerFileNotFound, rp.path, ".: cannot open " + script.text);
      }
    } else if (auto dirs = path_dirs(session.vars); dirs && !session.path_changed) {
      bool maybe = false;
      for (const auto& d : *dirs) {
        StatResult st = dockmock::stat(ctx.container, join_path(d, script.text));
        if (!st.absent_precise()) maybe = true;
      }
      if (!maybe) {
        fs.conflict(FaultType::InnerFileNotFound, script.text,
                    ".: " + script.text + ": not found in PATH");
      }
    }
  }
  session.cwd_fuzzy = true;
  return r;
}

MockResult apt(const CommandCall& call, Context& ctx, ShellSession& session) {
  MockResult r;
  MockFs fs(ctx, session, r, call.line);
  ParsedArgs args = parse_args(call.argv, "oct");
  std::string sub = args.operands.empty() ? std::string() : args.operands[0].text;
  size_t quiet = static_cast<size_t>(std::count(args.flags.begin(), args.flags.end(), 'q'));
  bool assume_yes = args.has('y') || args.has_long("--yes") || args.has_long("--assume-yes") ||
                    args.has_long("--force-yes") || quiet >= 2 || args.has_long("--quiet=2");
  if (auto it = args.values.find('o'); it != args.values.end()) {
    std::string opt = it->second;
    if (opt.find("Assume-Yes=true") != std::string::npos || opt.find("Assume-Yes=1") != std::string::npos) {
      assume_yes = true;
    }
  }
  static const char* kPrompting[] = {"install", "upgrade", "dist-upgrade", "full-upgrade",
                                     "remove",  "purge",   "autoremove",   "reinstall"};
  bool prompts = std::any_of(std::begin(kPrompting), std::end(kPrompting),
                             [&](const char* s) { return sub == s; });
  if (prompts && !assume_yes) {
    fs.conflict(FaultType::RequireManualInput, call.argv[0].text + " " + sub,
                call.argv[0].text + " " + sub +
                    " asks for confirmation; add -y to run without input");
  }
  r.uncertain_exit();
  return r;
}

MockResult bundle(const CommandCall& call, Context& ctx, ShellSession& session) {
  MockResult r;
  MockFs fs(ctx, session, r, call.line);
  ParsedArgs args = parse_args(call.argv);
  std::string sub = args.operands.empty() ? "install" : args.operands[0].text;
  r.uncertain_exit();
  if (sub == "install" || sub == "update" || sub == "check" || sub == "exec" || sub == "package") {
    version_check_in_cwd(Toolchain::Ruby, fs);
    std::string gemfile = "Gemfile";
    for (const auto& f : args.long_flags) {
      if (starts_with(f, "--gemfile=")) gemfile = f.substr(10);
    }
    require_file(fs, {gemfile, false}, "bundler: could not locate Gemfile");
  }
  return r;
}

MockResult git(const CommandCall& call, Context& ctx, ShellSession& session) {
  MockResult r;
  MockFs fs(ctx, session, r, call.line);
  ParsedArgs args = parse_args(call.argv, "bcoC");
  r.uncertain_exit();
  if (args.operands.empty() || args.operands[0].text != "clone") return r;
  auto rest = after_subcommand(args);
  if (rest.empty()) return r;
  ExpandedValue dir;
  if (rest.size() >= 2) {
    dir = rest[1];
  } else {
    std::string url = rest[0].text;
    while (!url.empty() && url.back() == '/') url.pop_back();
    std::string name = url.substr(url.find_last_of("/:") == std::string::npos ? 0 : url.find_last_of("/:") + 1);
    if (ends_with(name, ".git")) name.resize(name.size() - 4);
    if (name.empty()) return r;
    dir = {name, rest[0].fuzzy};
  }
  ResolvedPath rp = fs.resolve(dir);
  place_fuzzy(ctx, rp.path, NodeKind::Directory);
  return r;
}

MockResult go(const CommandCall& call, Context& ctx, ShellSession& session) {
  MockResult r;
  MockFs fs(ctx, session, r, call.line);
  ParsedArgs args = parse_args(call.argv, "o");
  std::string sub = args.operands.empty() ? std::string() : args.operands[0].text;
  r.uncertain_exit();
  if (sub == "get" || sub == "install" || sub == "build" || sub == "run" || sub == "test" ||
      sub == "mod" || sub == "generate") {
    version_check_in_cwd(Toolchain::Go, fs);
  }
  if (sub == "get") {
    ExecLookup git = lookup_executable({"git", false}, ctx, session.cwd_value());
    if (git == ExecLookup::NotFound && !session.path_changed) {
      fs.conflict(FaultType::CommandNotFound, "git", "go get needs git, which is not installed");
    }
  }
  if (auto it = args.values.find('o'); it != args.values.end()) {
    place_fuzzy(ctx, fs.resolve({it->second, false}).path, NodeKind::Regular);
  }
  return r;
}

MockResult ls(const CommandCall& call, Context& ctx, ShellSession& session) {
  MockResult r;
  MockFs fs(ctx, session, r, call.line);
  ParsedArgs args = parse_args(call.argv, "IwT");
  for (const auto& op : args.operands) {
    ResolvedPath rp = fs.resolve(op);
    StatResult st = fs.stat(rp);
    if (st.absent_precise()) {
      fs.conflict(FaultType::InnerFileNotFound, rp.path,
                  "ls: cannot access " + squote(op.text) + ": No such file or directory");
    } else if (st.absent_fuzzy()) {
      r.presume();
    }
  }
  return r;
}

MockResult ln(const CommandCall& call, Context& ctx, ShellSession& session) {
  MockResult r;
  MockFs fs(ctx, session, r, call.line);
  ParsedArgs args = parse_args(call.argv, "tS");
  bool symbolic = args.has('s') || args.has_long("--symbolic");
  bool force = args.has('f') || args.has_long("--force");
  if (args.operands.empty()) {
    fs.conflict(FaultType::CommandMisuse, "ln", "ln: missing file operand");
    return r;
  }
  std::vector<ExpandedValue> targets = args.operands;
  ExpandedValue link;
  if (targets.size() == 1) {
    link = {base_name(targets[0].text), targets[0].fuzzy};
  } else {
    link = targets.back();
    targets.pop_back();
  }
  ResolvedPath lrp = fs.resolve(link);
  StatResult lst = fs.stat(lrp);
  bool into_dir = lst.found() && lst.kind == NodeKind::Directory && !args.has('n') && !args.has('T');
  for (const auto& target : targets) {
    if (!symbolic) {
      ResolvedPath trp = fs.resolve(target);
      StatResult tst = fs.stat(trp);
      if (tst.absent_precise()) {
        fs.conflict(FaultType::InnerFileNotFound, trp.path,
                    "ln: failed to access " + squote(target.text) + ": No such file or directory");
        continue;
      }
      if (tst.absent_fuzzy()) r.presume();
    }
    ResolvedPath at = lrp;
    if (into_dir) at = {join_path(lrp.path, base_name(target.text)), lrp.fuzzy || target.fuzzy};
    StatResult ast = fs.stat(at);
    if (ast.found() && !force) {
      if (ast.fuzzy) {
        r.presume();
      } else {
        fs.conflict(FaultType::CommandMisuse, at.path,
                    "ln: failed to create link " + squote(at.path) + ": File exists");
        continue;
      }
    } else if (ast.absent_precise() && !parent_is_dir(ctx.container, at.path)) {
      fs.conflict(FaultType::InnerFileNotFound, at.path,
                  "ln: failed to create link " + squote(at.path) + ": No such file or directory");
      continue;
    } else if (ast.absent_fuzzy()) {
      r.presume();
    }
    // A link may point at a directory; its kind stays unknown.
    fs.create(at, FileNode::regular(true));
  }
  return r;
}

MockResult npm(const CommandCall& call, Context& ctx, ShellSession& session) {
  MockResult r;
  MockFs fs(ctx, session, r, call.line);
  ParsedArgs args = parse_args(call.argv);
  std::string sub = args.operands.empty() ? std::string() : args.operands[0].text;
  bool global = args.has('g') || args.has_long("--global") || args.has_long("--location=global");
  auto packages = after_subcommand(args);
  bool install = sub == "install" || sub == "i" || sub == "add" || sub == "isntall";
  bool ci = sub == "ci" || sub == "clean-install";
  bool scripts = sub == "run" || sub == "run-script" || sub == "start" || sub == "test" ||
                 sub == "restart" || sub == "stop" || sub == "t" || sub == "tst";
  // Installing from a present manifest is taken to succeed.
  if (!(install || ci) || global) r.uncertain_exit();
  if (global && (install || sub == "link")) {
    ctx.executables.fuzzy = true;
    fuzz_path(ctx.container, "/usr/local");
    return r;
  }
  if ((install && packages.empty()) || ci || scripts) {
    require_file(fs, {"package.json", false}, "npm ERR! enoent Could not read package.json");
  }
  if (ci && !session.cwd_fuzzy) {
    ResolvedPath lock = fs.resolve({"package-lock.json", false});
    ResolvedPath shrink = fs.resolve({"npm-shrinkwrap.json", false});
    StatResult a = fs.stat(lock);
    StatResult b = fs.stat(shrink);
    if (a.absent_precise() && b.absent_precise()) {
      fs.conflict(FaultType::InnerFileNotFound, lock.path,
                  "npm ci can only install with an existing package-lock.json");
      place_fuzzy(ctx, lock.path, NodeKind::Regular);
    } else if (!a.found() && !b.found()) {
      r.presume();
    }
  }
  if (install || ci || sub == "update" || sub == "rebuild" || sub == "prune") {
    ResolvedPath modules = fs.resolve({"node_modules", false});
    place_fuzzy(ctx, modules.path, NodeKind::Directory);
    if (install) {
      ResolvedPath lock = fs.resolve({"package-lock.json", false});
      if (find_node(ctx.container, lock.path) == nullptr) place_fuzzy(ctx, lock.path, NodeKind::Regular);
      ResolvedPath manifest = fs.resolve({"package.json", false});
      if (!packages.empty() && find_node(ctx.container, manifest.path) == nullptr) {
        place_fuzzy(ctx, manifest.path, NodeKind::Regular);
      }
    }
  }
  return r;
}

MockResult pip(const CommandCall& call, Context& ctx, ShellSession& session) {
  MockResult r;
  MockFs fs(ctx, session, r, call.line);
  ParsedArgs args = parse_args(call.argv, "rceitfb");
  std::string sub = args.operands.empty() ? std::string() : args.operands[0].text;
  r.uncertain_exit();
  if (sub != "install" && sub != "download" && sub != "wheel") return r;
  if (auto it = args.values.find('r'); it != args.values.end()) {
    require_file(fs, {it->second, false}, "Could not open requirements file");
  }
  for (size_t i = 1; i + 1 < call.argv.size(); ++i) {
    if (call.argv[i].text == "--requirement") {
      require_file(fs, call.argv[i + 1], "Could not open requirements file");
    }
  }
  auto local = [&](const ExpandedValue& v) {
    const std::string& t = v.text;
    if (t == "." || t == ".." || starts_with(t, "./") || starts_with(t, "../") || starts_with(t, "/")) {
      require_file(fs, v, "Directory does not exist");
    }
  };
  if (auto it = args.values.find('e'); it != args.values.end()) local({it->second, false});
  for (const auto& p : after_subcommand(args)) local(p);
  return r;
}

MockResult python(const CommandCall& call, Context& ctx, ShellSession& session) {
  MockResult r;
  MockFs fs(ctx, session, r, call.line);
  r.uncertain_exit();
  for (size_t i = 1; i < call.argv.size(); ++i) {
    const ExpandedValue& a = call.argv[i];
    if (a.text == "-c" || a.text == "-m" || a.text == "-") break;
    if (a.text == "-W" || a.text == "-X") {
      ++i;
      continue;
    }
    if (!a.text.empty() && a.text[0] == '-') continue;
    require_file(fs, a, "python: can't open file");
    break;
  }
  return r;
}

MockResult touch(const CommandCall& call, Context& ctx, ShellSession& session) {
  MockResult r;
  MockFs fs(ctx, session, r, call.line);
  ParsedArgs args = parse_args(call.argv, "dtr");
  bool no_create = args.has('c') || args.has_long("--no-create");
  if (args.operands.empty()) {
    fs.conflict(FaultType::CommandMisuse, "touch", "touch: missing file operand");
    return r;
  }
  for (const auto& op : args.operands) {
    ResolvedPath rp = fs.resolve(op);
    StatResult st = fs.stat(rp);
    if (st.found()) continue;
    if (no_create) continue;
    if (st.absent_precise() && !parent_is_dir(ctx.container, rp.path)) {
      fs.conflict(FaultType::InnerFileNotFound, rp.path,
                  "touch: cannot touch " + squote(op.text) + ": No such file or directory");
      place_fuzzy(ctx, rp.path, NodeKind::Regular);
      continue;
    }
    if (st.absent_fuzzy()) r.presume();
    fs.create_file(rp);
  }
  return r;
}

MockResult succeed(const CommandCall&, Context&, ShellSession&) { return MockResult::ok(); }

MockResult uncertain(const CommandCall&, Context&, ShellSession&) { return MockResult::fuzzy(); }

MockResult set(const CommandCall& call, Context&, ShellSession& session) {
  for (size_t i = 1; i < call.argv.size(); ++i) {
    const std::string& a = call.argv[i].text;
    if (a == "--" || a == "-") break;
    if ((a == "-o" || a == "+o") && i + 1 < call.argv.size()) {
      if (call.argv[i + 1].text == "errexit") session.errexit = a[0] == '-';
      ++i;
      continue;
    }
    if (a.size() > 1 && (a[0] == '-' || a[0] == '+') && a.find('e') != std::string::npos) {
      session.errexit = a[0] == '-';
    }
    if (a.empty() || (a[0] != '-' && a[0] != '+')) break;
  }
  return MockResult::ok();
}

MockResult unset(const CommandCall& call, Context&, ShellSession& session) {
  for (size_t i = 1; i < call.argv.size(); ++i) {
    const ExpandedValue& a = call.argv[i];
    if (a.text == "-v" || a.text == "-f") continue;
    if (!shell::is_valid_name(a.text)) continue;
    if (session.uncertain || a.fuzzy) {
      session.vars.set_fuzzy(a.text, session.vars.lookup(a.text).value);
    } else {
      session.vars.unset_precise(a.text);
    }
    if (a.text == "PATH") session.path_changed = true;
  }
  return MockResult::ok();
}

MockResult which(const CommandCall& call, Context& ctx, ShellSession& session) {
  MockResult r;
  for (size_t i = 1; i < call.argv.size(); ++i) {
    const ExpandedValue& a = call.argv[i];
    if (!a.text.empty() && a.text[0] == '-') continue;
    if (lookup_executable(a, ctx, session.cwd_value()) != ExecLookup::Found) r.uncertain_exit();
  }
  return r;
}

MockResult command(const CommandCall& call, Context& ctx, ShellSession& session) {
  size_t i = 1;
  bool query = false;
  while (i < call.argv.size() && call.argv[i].text.size() > 1 && call.argv[i].text[0] == '-') {
    if (call.argv[i].text == "-v" || call.argv[i].text == "-V") query = true;
    ++i;
  }
  if (query) return which(call, ctx, session);
  if (i >= call.argv.size() || !call.run_nested) return MockResult::ok();
  return call.run_nested({call.argv.begin() + static_cast<long>(i), call.argv.end()});
}

}  // namespace handlers

// ---------------------------------------------------------------------------
// Word expansion with pathname globbing against the container tree.

namespace {

std::string unescape(const std::string& pattern) {
  std::string out;
  for (size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == '\\' && i + 1 < pattern.size()) ++i;
    out += pattern[i];
  }
  return out;
}

bool has_active_glob(const std::string& pattern) {
  for (size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == '\\') {
      ++i;
      continue;
    }
    if (pattern[i] == '*' || pattern[i] == '?' || pattern[i] == '[') return true;
  }
  return false;
}

std::vector<std::string> split_pattern(const std::string& pattern) {
  std::vector<std::string> parts;
  std::string cur;
  for (size_t i = 0; i < pattern.size(); ++i) {
    if (pattern[i] == '\\' && i + 1 < pattern.size()) {
      cur += pattern[i];
      cur += pattern[++i];
    } else if (pattern[i] == '/') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur += pattern[i];
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

struct GlobOutcome {
  std::vector<std::string> matches;
  bool fuzzy = false;
};

GlobOutcome glob_container(const std::string& pattern, const FileNode& root,
                           const ExpandedValue& cwd) {
  GlobOutcome out;
  bool absolute = !pattern.empty() && pattern[0] == '/';
  if (!absolute && cwd.fuzzy) {
    out.fuzzy = true;
    return out;
  }
  struct Candidate {
    std::string shown;
    std::string path;
  };
  std::vector<Candidate> cands = {{absolute ? "" : "", absolute ? "/" : cwd.text}};
  auto parts = split_pattern(pattern);
  for (size_t k = 0; k < parts.size(); ++k) {
    std::vector<Candidate> next;
    const std::string& comp = parts[k];
    auto join_shown = [&](const std::string& shown, const std::string& name) {
      if (absolute) return shown + "/" + name;
      return shown.empty() ? name : shown + "/" + name;
    };
    if (has_active_glob(comp)) {
      for (const auto& c : cands) {
        const FileNode* dir = find_node(root, c.path);
        if (dir == nullptr) {
          if (!stat(root, c.path).absent_precise()) out.fuzzy = true;
          continue;
        }
        if (!dir->is_dir()) {
          if (dir->fuzzy) out.fuzzy = true;
          continue;
        }
        if (dir->fuzzy) out.fuzzy = true;
        for (const auto& [name, child] : dir->children) {
          if (fnmatch(comp.c_str(), name.c_str(), FNM_PERIOD) != 0) continue;
          next.push_back({join_shown(c.shown, name), join_path(c.path, name)});
        }
      }
    } else {
      std::string lit = unescape(comp);
      for (const auto& c : cands) next.push_back({join_shown(c.shown, lit), join_path(c.path, lit)});
    }
    cands = std::move(next);
  }
  for (const auto& c : cands) {
    StatResult st = stat(root, c.path);
    if (st.found()) {
      out.matches.push_back(c.shown.empty() ? "/" : c.shown);
      if (st.fuzzy && st.kind == NodeKind::Regular) out.fuzzy = true;
    } else if (st.absent_fuzzy()) {
      out.fuzzy = true;
    }
  }
  std::sort(out.matches.begin(), out.matches.end());
  return out;
}

std::vector<ExpandedValue> expand_command_word(const shell::Word& word, const Context& ctx,
                                               const ShellSession& session) {
  ExpandedValue home = home_of(session.vars);
  if (!word.has_glob()) return shell::expand_fields(word, session.vars, home);
  ExpandedValue pattern = shell::expand_pattern(word, session.vars, home);
  if (pattern.fuzzy) return {{unescape(pattern.text), true}};
  GlobOutcome g = glob_container(pattern.text, ctx.container, session.cwd_value());
  if (g.fuzzy) return {{unescape(pattern.text), true}};
  if (g.matches.empty()) return {{unescape(pattern.text), false}};
  std::vector<ExpandedValue> out;
  for (auto& m : g.matches) out.push_back({m, false});
  return out;
}

bool is_pseudo_path(const std::string& path) {
  return is_inside(path, "/dev") || is_inside(path, "/proc") || is_inside(path, "/sys");
}

// Returns false when a redirection fails, in which case the command does
// not run.
bool apply_redirects(const std::vector<shell::Redirect>& redirects, MockFs& fs) {
  for (const auto& rd : redirects) {
    if (rd.op == "<<" || rd.op == "<<-" || rd.op == ">&" || rd.op == "<&") continue;
    ExpandedValue target = shell::expand_word(rd.target, fs.session.vars, home_of(fs.session.vars));
    ResolvedPath rp = fs.resolve(target);
    if (is_pseudo_path(rp.path)) continue;
    StatResult st = fs.stat(rp);
    if (rd.op == "<") {
      if (st.absent_precise()) {
        fs.conflict(FaultType::InnerFileNotFound, rp.path,
                    "cannot open " + target.text + ": No such file");
        place_fuzzy(fs.ctx, rp.path, NodeKind::Regular);
        return false;
      }
      if (st.absent_fuzzy()) fs.result.presume();
      continue;
    }
    if (st.found()) {
      if (st.kind == NodeKind::Directory) {
        if (rp.fuzzy) {
          fs.result.presume();
          continue;
        }
        fs.conflict(FaultType::CommandMisuse, rp.path, "cannot create " + target.text + ": Is a directory");
        return false;
      }
      if (st.fuzzy) fs.result.presume();
      if (fs.session.uncertain) fs.fuzz(rp);
      continue;
    }
    if (st.absent_precise() && !parent_is_dir(fs.ctx.container, rp.path)) {
      fs.conflict(FaultType::InnerFileNotFound, rp.path,
                  "cannot create " + target.text + ": Directory nonexistent");
      place_fuzzy(fs.ctx, rp.path, NodeKind::Regular);
      return false;
    }
    if (st.absent_fuzzy()) fs.result.presume();
    fs.create_file(rp);
  }
  return true;
}

void merge_into(MockResult& into, const MockResult& from) {
  for (const auto& w : from.warnings) into.warnings.push_back(w);
  into.exit_fuzzy = into.exit_fuzzy || from.exit_fuzzy;
  into.assumed = into.assumed || from.assumed;
  into.halted = into.halted || from.halted;
}

// An unmocked command may change anything it can reach.
void unknown_command(Context& ctx) { fuzz_all(ctx); }

}  // namespace

MockResult run_argv(const std::vector<ExpandedValue>& argv, Context& ctx, ShellSession& session,
                    const MockSetup& setup, int line) {
  MockResult r;
  if (argv.empty()) return r;
  const ExpandedValue& name = argv[0];
  if (name.fuzzy) {
    log::debug("line {}: command name '{}' is fuzzy", line, name.text);
    unknown_command(ctx);
    r.uncertain_exit();
    return r.settle();
  }
  std::string base = name.text.find('/') == std::string::npos ? name.text : base_name(name.text);
  ExecLookup found = lookup_executable(name, ctx, session.cwd_value());
  if (found == ExecLookup::NotFound && session.path_changed && name.text.find('/') == std::string::npos) {
    found = ExecLookup::Fuzzy;
  }
  if (found == ExecLookup::NotFound) {
    r.conflict(make_warning(FaultType::CommandNotFound, line, name.text,
                            name.text + ": command not found"));
  }
  const MockRegistry::Entry* entry = setup.commands().find(base);
  if (entry == nullptr) {
    log::debug("line {}: no mock for '{}', fuzzing the context", line, base);
    apply_autofix(r, ctx);
    unknown_command(ctx);
    r.uncertain_exit();
    return r.settle();
  }
  CommandCall call;
  call.argv = argv;
  call.line = line;
  call.options = &setup.options;
  call.run_nested = [&](const std::vector<ExpandedValue>& nested) {
    return run_argv(nested, ctx, session, setup, line);
  };
  MockResult m;
  try {
    m = entry->handler(call, ctx, session);
  } catch (const ConflictFault& e) {
    m.conflict(make_warning(e.type(), line, e.path(), e.what()));
  }
  if (entry->spec.integrity == Integrity::Partial) {
    apply_scope(entry->spec.scope_for(first_subcommand(argv)), ctx, session);
  }
  merge_into(r, m);
  apply_autofix(r, ctx);
  if (!setup.options.assumption && r.assumed && r.warnings.empty()) {
    fuzz_all(ctx);
    r.halted = true;
  }
  return r.settle();
}

MockResult dispatch_command(const shell::SimpleCommand& cmd, Context& ctx, ShellSession& session,
                            const MockSetup& setup, int line) {
  MockResult r;
  ExpandedValue home = home_of(session.vars);
  if (cmd.words.empty()) {
    for (const auto& a : cmd.assignments) {
      ExpandedValue v = shell::expand_word(a.value, session.vars, home);
      if (session.uncertain) v.fuzzy = true;
      session.vars.set(a.name, v);
      if (a.name == "PATH") session.path_changed = true;
    }
    MockFs fs(ctx, session, r, line);
    apply_redirects(cmd.redirects, fs);
    apply_autofix(r, ctx);
    return r.settle();
  }
  std::vector<ExpandedValue> argv;
  for (const auto& w : cmd.words) {
    for (auto& f : expand_command_word(w, ctx, session)) argv.push_back(std::move(f));
  }
  {
    MockFs fs(ctx, session, r, line);
    if (!apply_redirects(cmd.redirects, fs)) {
      apply_autofix(r, ctx);
      return r.settle();
    }
  }
  bool path_prefix = std::any_of(cmd.assignments.begin(), cmd.assignments.end(),
                                 [](const shell::Assignment& a) { return a.name == "PATH"; });
  bool saved = session.path_changed;
  if (path_prefix) session.path_changed = true;
  MockResult m = run_argv(argv, ctx, session, setup, line);
  if (path_prefix) session.path_changed = saved;
  merge_into(r, m);
  return r.settle();
}

Step dispatch_command(const shell::SimpleCommand& cmd, Context ctx, const MockSetup& setup, int line) {
  ShellSession session = ShellSession::for_context(ctx);
  MockResult r = dispatch_command(cmd, ctx, session, setup, line);
  return {std::move(r), std::move(ctx)};
}

Step run_command(const std::vector<std::string>& argv, Context ctx, const MockSetup& setup, int line) {
  ShellSession session = ShellSession::for_context(ctx);
  std::vector<ExpandedValue> words;
  for (const auto& a : argv) words.push_back({a, false});
  MockResult r = run_argv(words, ctx, session, setup, line);
  return {std::move(r), std::move(ctx)};
}

// ---------------------------------------------------------------------------
// Script interpretation.

namespace {

enum class Exit { Zero, Fail, Fuzzy, Halted };

class Interpreter {
 public:
  Interpreter(Context& ctx, const MockSetup& setup, int line) : ctx_(ctx), setup_(setup), line_(line) {}

  MockResult run(const std::vector<shell::CommandList>& items, ShellSession& session) {
    run_lists(items, session, true);
    MockResult r;
    if (async_) {
      fuzz_all(ctx_);
      return MockResult::fuzzy();
    }
    r.warnings = std::move(committed_);
    r.exit_fuzzy = fuzzy_;
    r.halted = halted_;
    return r.settle();
  }

 private:
  struct Group {
    std::vector<const shell::Pipeline*> pipelines;
    std::vector<std::string> ops;
    bool async = false;
  };

  static std::vector<Group> groups_of(const std::vector<shell::CommandList>& items) {
    std::vector<Group> groups;
    for (const auto& list : items) {
      Group g;
      for (size_t i = 0; i < list.pipelines.size(); ++i) {
        g.pipelines.push_back(&list.pipelines[i]);
        std::string op = i < list.ops.size() ? list.ops[i] : list.terminator;
        if (op == "&&" || op == "||") {
          g.ops.push_back(op);
          continue;
        }
        g.async = op == "&";
        groups.push_back(std::move(g));
        g = Group{};
      }
    }
    return groups;
  }

  Exit run_lists(const std::vector<shell::CommandList>& items, ShellSession& session, bool tail) {
    auto groups = groups_of(items);
    Exit status = Exit::Zero;
    for (size_t i = 0; i < groups.size(); ++i) {
      if (groups[i].async) {
        async_ = true;
        fuzz_all(ctx_);
        status = Exit::Fuzzy;
        continue;
      }
      status = run_group(groups[i], session, tail && i + 1 == groups.size());
    }
    return status;
  }

  Exit run_group(const Group& g, ShellSession& session, bool final) {
    Exit s = Exit::Zero;
    size_t n = g.pipelines.size();
    for (size_t i = 0; i < n; ++i) {
      bool uncertain = session.uncertain;
      if (i > 0) {
        const std::string& op = g.ops[i - 1];
        if (s == Exit::Halted) break;
        if (op == "&&") {
          if (s == Exit::Fail) continue;
        } else {
          if (s == Exit::Zero) continue;
          if (s == Exit::Fuzzy) uncertain = true;
        }
      }
      bool all_and = true;
      for (size_t k = i; k < g.ops.size(); ++k) all_and = all_and && g.ops[k] == "&&";
      bool commits = all_and && (final || (session.errexit && i + 1 == n));
      s = run_pipeline(*g.pipelines[i], session, uncertain, commits);
    }
    return s;
  }

  Exit run_pipeline(const shell::Pipeline& p, ShellSession& session, bool uncertain, bool commits) {
    if (p.commands.size() == 1 && !p.negated) {
      return run_command(p.commands[0], session, uncertain, commits);
    }
    Exit last = Exit::Zero;
    for (size_t j = 0; j < p.commands.size(); ++j) {
      ShellSession sub = session;
      bool is_last = j + 1 == p.commands.size();
      last = run_command(p.commands[j], sub, uncertain, false);
      if (!is_last && last == Exit::Halted) return Exit::Halted;
    }
    if (!p.negated) return last;
    switch (last) {
      case Exit::Zero:
        fuzzy_ = true;
        return Exit::Fuzzy;
      case Exit::Fail:
        return Exit::Zero;
      default:
        return last;
    }
  }

  Exit run_command(const shell::Command& cmd, ShellSession& session, bool uncertain, bool commits) {
    if (const auto* simple = std::get_if<shell::SimpleCommand>(&cmd)) {
      return run_simple(*simple, session, uncertain, commits);
    }
    if (const auto* sub = std::get_if<shell::Subshell>(&cmd)) {
      ShellSession inner = session;
      inner.uncertain = uncertain;
      if (!sub->redirects.empty()) {
        MockResult r;
        MockFs fs(ctx_, inner, r, line_);
        bool ok = apply_redirects(sub->redirects, fs);
        if (!ok) return conclude(r, commits, uncertain);
      }
      size_t before = committed_.size();
      Exit e = run_lists(sub->body, inner, commits);
      if (uncertain) committed_.resize(before);
      return uncertain ? Exit::Fuzzy : e;
    }
    const auto& opaque = std::get<shell::OpaqueNode>(cmd);
    log::debug("line {}: opaque shell construct ({}), fuzzing the context", line_, opaque.reason);
    fuzz_all(ctx_);
    session.vars.set_all_tracked(false);
    session.cwd_fuzzy = true;
    fuzzy_ = true;
    return Exit::Fuzzy;
  }

  Exit run_simple(const shell::SimpleCommand& cmd, ShellSession& session, bool uncertain,
                  bool commits) {
    if (uncertain) {
      ShellSession replay = session;
      replay.uncertain = true;
      dispatch_command(cmd, ctx_, replay, setup_, line_);
      session = keep_uncertain(session, replay);
      fuzzy_ = true;
      return Exit::Fuzzy;
    }
    Context saved_ctx = ctx_;
    ShellSession saved_session = session;
    MockResult r = dispatch_command(cmd, ctx_, session, setup_, line_);
    if (r.status == MockStatus::Conflict && !commits) {
      // The shell handles this failure; only its possible effects remain.
      ctx_ = std::move(saved_ctx);
      session = saved_session;
      bool never_ran = std::all_of(r.warnings.begin(), r.warnings.end(), [](const Warning& w) {
        return w.fault_type == FaultType::CommandNotFound;
      });
      if (never_ran) return Exit::Fail;
      ShellSession replay = session;
      replay.uncertain = true;
      dispatch_command(cmd, ctx_, replay, setup_, line_);
      session = keep_uncertain(session, replay);
      fuzzy_ = true;
      return Exit::Fail;
    }
    return conclude(r, commits, false);
  }

  Exit conclude(const MockResult& r, bool commits, bool uncertain) {
    if (uncertain) {
      fuzzy_ = true;
      return Exit::Fuzzy;
    }
    if (r.status == MockStatus::Conflict) {
      if (!commits) {
        fuzzy_ = true;
        return Exit::Fail;
      }
      for (const auto& w : r.warnings) committed_.push_back(w);
      if (r.exit_fuzzy) fuzzy_ = true;
      return Exit::Zero;
    }
    if (r.halted) {
      halted_ = true;
      fuzzy_ = true;
      return Exit::Halted;
    }
    if (r.status == MockStatus::Fuzzy) {
      fuzzy_ = true;
      return Exit::Fuzzy;
    }
    return Exit::Zero;
  }

  // Session state after a command that may or may not have run.
  static ShellSession keep_uncertain(const ShellSession& before, const ShellSession& after) {
    ShellSession s = after;
    s.uncertain = before.uncertain;
    if (after.cwd != before.cwd || after.cwd_fuzzy != before.cwd_fuzzy) s.cwd_fuzzy = true;
    s.errexit = before.errexit || after.errexit;
    return s;
  }

  Context& ctx_;
  const MockSetup& setup_;
  int line_;
  std::vector<Warning> committed_;
  bool fuzzy_ = false;
  bool halted_ = false;
  bool async_ = false;
};

}  // namespace

MockResult run_script(const shell::ShellProgram& program, Context& ctx, ShellSession& session,
                      const MockSetup& setup, int line) {
  Interpreter interp(ctx, setup, line);
  return interp.run(program.items, session);
}

}  // namespace dockmock
