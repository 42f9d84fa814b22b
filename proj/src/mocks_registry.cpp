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

#include <cctype>

#include "dockmock/mocks.hpp"
#include "mock_handlers.hpp"

namespace dockmock {

std::string_view mock_status_name(MockStatus status) {
  switch (status) {
    case MockStatus::PreciseOk:
      return "precise-ok";
    case MockStatus::Conflict:
      return "conflict";
    case MockStatus::Fuzzy:
      return "fuzzy";
  }
  return "fuzzy";
}

MockResult MockResult::fuzzy() {
  MockResult r;
  r.status = MockStatus::Fuzzy;
  r.exit_fuzzy = true;
  return r;
}

void MockResult::conflict(Warning w) {
  warnings.push_back(std::move(w));
  status = MockStatus::Conflict;
}

void MockResult::uncertain_exit() {
  exit_fuzzy = true;
  if (status == MockStatus::PreciseOk) status = MockStatus::Fuzzy;
}

void MockResult::presume() {
  assumed = true;
  uncertain_exit();
}

MockResult& MockResult::settle() {
  if (!warnings.empty()) {
    status = MockStatus::Conflict;
  } else if (exit_fuzzy || assumed || halted) {
    status = MockStatus::Fuzzy;
  } else {
    status = MockStatus::PreciseOk;
  }
  return *this;
}

const FuzzScope& MockSpec::scope_for(std::string_view subcommand) const {
  auto it = subcommand_scopes.find(std::string(subcommand));
  return it == subcommand_scopes.end() ? fuzz_scope : it->second;
}

ShellSession ShellSession::for_context(const Context& ctx) {
  ShellSession s;
  s.vars = ctx.vars;
  s.cwd = ctx.workdir;
  s.cwd_fuzzy = ctx.workdir_fuzzy;
  return s;
}

void MockRegistry::add(MockSpec spec, CommandHandler handler) {
  std::string name = spec.name;
  entries_[name] = Entry{std::move(spec), std::move(handler)};
}

const MockRegistry::Entry* MockRegistry::find(std::string_view name) const {
  auto it = entries_.find(name);
  return it == entries_.end() ? nullptr : &it->second;
}

std::vector<std::string> MockRegistry::names() const {
  std::vector<std::string> out;
  for (const auto& [name, entry] : entries_) out.push_back(name);
  return out;
}

namespace {

MockSpec complete(std::string name) { return MockSpec{std::move(name), Integrity::Complete, {}, {}}; }

MockSpec partial(std::string name, FuzzScope scope = {},
                 std::map<std::string, FuzzScope> sub = {}) {
  return MockSpec{std::move(name), Integrity::Partial, std::move(scope), std::move(sub)};
}

FuzzScope paths(std::vector<std::string> p, bool executables = false) {
  FuzzScope s;
  s.paths = std::move(p);
  s.executables = executables;
  return s;
}

FuzzScope everything_but_vars() {
  FuzzScope s;
  s.files = true;
  s.executables = true;
  return s;
}

}  // namespace

MockRegistry MockRegistry::with_builtin_mocks() {
  namespace h = handlers;
  MockRegistry r;
  r.add(complete("cd"), h::cd);
  r.add(complete("chmod"), h::chmod);
  r.add(complete("cp"), h::cp);
  r.add(complete("echo"), h::echo);
  r.add(complete("env"), h::env);
  r.add(complete("export"), h::export_);
  r.add(complete("mv"), h::mv);
  r.add(complete("mkdir"), h::mkdir);
  r.add(complete("pwd"), h::pwd);
  r.add(complete("rm"), h::rm);

  FuzzScope dot_scope = everything_but_vars();
  dot_scope.variables = true;
  r.add(partial(".", dot_scope), h::dot);

  FuzzScope apt_install = paths({"/var", "/etc", "/usr", "/opt", "/lib"}, true);
  std::map<std::string, FuzzScope> apt_sub = {
      {"update", paths({"/var/lib/apt", "/var/cache/apt"})},
      {"clean", paths({"/var/cache/apt"})},
      {"autoclean", paths({"/var/cache/apt"})},
  };
  r.add(partial("apt", apt_install, apt_sub), h::apt);
  r.add(partial("apt-get", apt_install, apt_sub), h::apt);

  r.add(partial("bundle", paths({"/usr/local/bundle", "$GEM_HOME", "$BUNDLE_PATH", "$HOME/.bundle"}, true),
                {{"exec", everything_but_vars()}}),
        h::bundle);
  r.add(partial("git", paths({"$CWD"}),
                {{"clone", {}}, {"config", paths({"$HOME/.gitconfig", "/etc/gitconfig"})}}),
        h::git);
  r.add(partial("go", paths({"$GOPATH", "/go", "$HOME/go", "$HOME/.cache", "/usr/local/go"}, true),
                {{"build", paths({"$CWD", "$GOPATH", "$HOME/.cache", "$HOME/go"})},
                 {"mod", paths({"$CWD", "$GOPATH", "$HOME/go"})},
                 {"version", {}},
                 {"env", {}}}),
        h::go);
  r.add(partial("ls"), h::ls);
  r.add(partial("ln"), h::ln);
  FuzzScope npm_scripts = paths({"$CWD"});
  r.add(partial("npm", npm_scripts,
                {{"install", paths({"$HOME/.npm"})},
                 {"i", paths({"$HOME/.npm"})},
                 {"ci", paths({"$HOME/.npm"})},
                 {"add", paths({"$HOME/.npm"})},
                 {"config", paths({"$HOME/.npmrc"})},
                 {"cache", paths({"$HOME/.npm"})},
                 {"--version", {}},
                 {"-v", {}}}),
        h::npm);
  FuzzScope pip_scope = paths({"/usr/local", "/usr/lib", "$HOME/.local", "$HOME/.cache"}, true);
  r.add(partial("pip", pip_scope), h::pip);
  r.add(partial("pip3", pip_scope), h::pip);
  r.add(partial("python", everything_but_vars()), h::python);
  r.add(partial("python3", everything_but_vars()), h::python);
  r.add(partial("touch"), h::touch);

  for (const char* name : {"true", ":", "printf", "sleep", "umask", "trap", "wait", "shift", "ulimit"}) {
    r.add(partial(name), h::succeed);
  }
  for (const char* name : {"false", "test", "[", "exit", "read"}) r.add(partial(name), h::uncertain);
  r.add(partial("set"), h::set);
  r.add(partial("unset"), h::unset);
  r.add(partial("which"), h::which);
  r.add(partial("type"), h::which);
  r.add(partial("command"), h::command);
  return r;
}

const MockRegistry& MockRegistry::builtin() {
  static const MockRegistry registry = with_builtin_mocks();
  return registry;
}

bool ParsedArgs::has_long(std::string_view name) const {
  for (const auto& f : long_flags) {
    std::string_view v(f);
    if (v == name) return true;
    if (v.size() > name.size() && v.substr(0, name.size()) == name && v[name.size()] == '=') {
      return true;
    }
  }
  return false;
}

ParsedArgs parse_args(const std::vector<ExpandedValue>& argv, std::string_view flags_with_value) {
  ParsedArgs out;
  bool options_done = false;
  for (size_t i = 1; i < argv.size(); ++i) {
    const std::string& a = argv[i].text;
    if (options_done || argv[i].fuzzy || a.size() < 2 || a[0] != '-') {
      out.operands.push_back(argv[i]);
      continue;
    }
    if (a == "--") {
      options_done = true;
      continue;
    }
    if (a[1] == '-') {
      out.long_flags.push_back(a);
      continue;
    }
    for (size_t j = 1; j < a.size(); ++j) {
      char c = a[j];
      out.flags += c;
      if (flags_with_value.find(c) != std::string_view::npos) {
        if (j + 1 < a.size()) {
          out.values[c] = a.substr(j + 1);
        } else if (i + 1 < argv.size()) {
          out.values[c] = argv[++i].text;
        }
        break;
      }
    }
  }
  return out;
}

void apply_scope(const FuzzScope& scope, Context& ctx, ShellSession& session) {
  if (scope.variables) {
    VariableMap fuzzed;
    for (const auto& [name, value] : session.vars.entries()) fuzzed.set_fuzzy(name, value);
    fuzzed.set_all_tracked(false);
    session.vars = std::move(fuzzed);
  }
  if (scope.files) fuzz_files(ctx);
  if (scope.executables) ctx.executables.fuzzy = true;
  for (const auto& raw : scope.paths) {
    std::string path;
    bool fuzzy = false;
    if (raw.rfind("$CWD", 0) == 0) {
      path = session.cwd + raw.substr(4);
      fuzzy = session.cwd_fuzzy;
    } else if (!raw.empty() && raw[0] == '$') {
      size_t end = 1;
      while (end < raw.size() && (std::isalnum(static_cast<unsigned char>(raw[end])) || raw[end] == '_')) {
        ++end;
      }
      VarLookup v = session.vars.lookup(raw.substr(1, end - 1));
      if (v.state == VarState::Unset) continue;
      fuzzy = v.state == VarState::Fuzzy;
      path = v.value + raw.substr(end);
    } else {
      path = raw;
    }
    if (fuzzy || path.empty() || path[0] != '/') {
      fuzz_files(ctx);
      continue;
    }
    fuzz_path(ctx.container, normalize_path(path));
  }
}

void apply_autofix(const MockResult& result, Context& ctx) {
  for (const auto& w : result.warnings) {
    switch (w.fault_type) {
      case FaultType::OuterFileNotFound:
      case FaultType::InnerFileNotFound:
      case FaultType::CommandMisuse:
        break;
      case FaultType::CommandNotFound:
        ctx.executables.names.insert(w.subject);
        break;
      default:
        fuzz_all(ctx);
        break;
    }
  }
}

MockFs::MockFs(Context& c, ShellSession& s, MockResult& r, int l)
    : ctx(c), session(s), result(r), line(l) {}

ResolvedPath MockFs::resolve(const ExpandedValue& p) const {
  return resolve_path(p, session.cwd_value());
}

StatResult MockFs::stat(const ResolvedPath& p) const {
  StatResult st = dockmock::stat(ctx.container, p.path);
  if (p.fuzzy) {
    if (st.absent_precise()) {
      st.status = StatResult::Status::AbsentFuzzy;
      st.blocked_by_file = false;
    }
    if (st.found()) st.fuzzy = true;
  }
  return st;
}

const FileNode* MockFs::node(const ResolvedPath& p) const { return find_node(ctx.container, p.path); }

bool MockFs::node_is_precise_dir(const ResolvedPath& p) const {
  const FileNode* n = node(p);
  return n != nullptr && n->is_dir() && !n->fuzzy && !p.fuzzy;
}

void MockFs::create(const ResolvedPath& p, FileNode n) {
  if (p.fuzzy || session.uncertain) mark_fuzzy_recursive(n);
  bool regular = !n.is_dir();
  try {
    put_subtree(ctx.container, p.path, std::move(n));
  } catch (const ConflictFault& e) {
    conflict(FaultType::InnerFileNotFound, p.path, e.what());
    return;
  }
  if (regular) note_created_file(ctx, p.path);
}

void MockFs::create_dir(const ResolvedPath& p, bool parents) {
  (void)parents;
  const FileNode* existing = node(p);
  if (existing != nullptr && existing->is_dir()) return;
  create(p, FileNode::directory());
}

void MockFs::create_file(const ResolvedPath& p) {
  const FileNode* existing = node(p);
  if (existing != nullptr) {
    if (session.uncertain || p.fuzzy) fuzz_path(ctx.container, p.path);
    return;
  }
  create(p, FileNode::regular());
}

void MockFs::remove(const ResolvedPath& p) {
  if (p.fuzzy || session.uncertain) {
    fuzz_path(ctx.container, p.path);
    return;
  }
  remove_node(ctx.container, p.path);
}

void MockFs::fuzz(const ResolvedPath& p) {
  if (p.fuzzy) {
    fuzz_files(ctx);
    return;
  }
  fuzz_path(ctx.container, p.path);
}

void MockFs::conflict(FaultType type, const std::string& subject, const std::string& message) {
  result.conflict(make_warning(type, line, subject, message));
}

}  // namespace dockmock
