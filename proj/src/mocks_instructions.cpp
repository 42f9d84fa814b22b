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

#include <fnmatch.h>

#include <algorithm>
#include <cctype>

#include <nlohmann/json.hpp>

#include "dockmock/log.hpp"
#include "dockmock/mocks.hpp"

namespace dockmock {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

bool ends_with(std::string_view s, std::string_view suffix) {
  return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

bool starts_with(std::string_view s, std::string_view prefix) {
  return s.size() >= prefix.size() && s.substr(0, prefix.size()) == prefix;
}

Step conflict_step(Context ctx, FaultType type, int line, std::string subject, std::string message) {
  MockResult r;
  r.conflict(make_warning(type, line, std::move(subject), std::move(message)));
  return {r.settle(), std::move(ctx)};
}

// Dockerfile variable substitution on one argument.
ExpandedValue expand_arg(const std::string& text, const VariableMap& vars) {
  auto word = shell::parse_word(text);
  if (!word) return {text, false};
  return shell::expand_word(*word, vars, {"~", false});
}

bool is_url(std::string_view s) {
  return starts_with(s, "http://") || starts_with(s, "https://") || starts_with(s, "git@") ||
         starts_with(s, "git://");
}

bool is_archive(std::string_view s) {
  for (const char* ext : {".tar", ".tar.gz", ".tgz", ".tar.bz2", ".tbz2", ".tar.xz", ".txz"}) {
    if (ends_with(s, ext)) return true;
  }
  return false;
}

bool has_glob(std::string_view s) { return s.find_first_of("*?[") != std::string_view::npos; }

// Matches a workspace glob component by component.
std::vector<std::string> glob_workspace(const FileNode& root, const std::string& pattern) {
  std::vector<std::string> cands = {"/"};
  for (const auto& comp : path_components(pattern)) {
    std::vector<std::string> next;
    for (const auto& c : cands) {
      const FileNode* dir = find_node(root, c);
      if (dir == nullptr || !dir->is_dir()) continue;
      if (!has_glob(comp)) {
        if (dir->children.count(comp)) next.push_back(join_path(c, comp));
        continue;
      }
      for (const auto& [name, child] : dir->children) {
        if (fnmatch(comp.c_str(), name.c_str(), 0) == 0) next.push_back(join_path(c, name));
      }
    }
    cands = std::move(next);
  }
  return cands;
}

void set_origin(FileNode& node, const std::string& origin) {
  node.origin = origin;
  for (auto& [name, child] : node.children) set_origin(child, origin + "/" + name);
}

void set_mode_recursive(FileNode& node, uint16_t mode) {
  node.mode = mode;
  for (auto& [name, child] : node.children) set_mode_recursive(child, mode);
}

void note_regulars(Context& ctx, const std::string& path) {
  const FileNode* n = find_node(ctx.container, path);
  if (n == nullptr) return;
  if (!n->is_dir()) {
    note_created_file(ctx, path);
    return;
  }
  for (const auto& [name, child] : n->children) {
    if (!child.is_dir()) note_created_file(ctx, join_path(path, name));
  }
}

const Context* find_stage(const MockSetup& setup, const std::string& name) {
  if (setup.stages == nullptr) return nullptr;
  std::string key = lower(name);
  for (const auto& [alias, ctx] : *setup.stages) {
    if (!alias.empty() && alias == key) return &ctx;
  }
  if (!name.empty() && std::all_of(name.begin(), name.end(), ::isdigit)) {
    size_t idx = std::stoul(name);
    if (idx < setup.stages->size()) return &(*setup.stages)[idx].second;
  }
  return nullptr;
}

VariableMap global_vars(const MockSetup& setup) {
  if (setup.global_args != nullptr) return *setup.global_args;
  return {};
}

}  // namespace

// --- FROM -----------------------------------------------------------------

MockResult mock_version_check(Toolchain tc, Context& ctx, int line, const std::string* manifest_text) {
  MockResult r;
  std::string manifest_path = "/" + std::string(manifest_name(tc));
  if (manifest_text == nullptr && ctx.workspace) {
    auto it = ctx.workspace->manifests.find(manifest_path);
    if (it != ctx.workspace->manifests.end()) manifest_text = &it->second;
  }
  if (manifest_text == nullptr) return r;
  auto reqs = tc == Toolchain::Ruby ? gemfile_ruby_requirements(*manifest_text)
                                    : gomod_go_requirements(*manifest_text);
  if (reqs.empty()) return r;
  auto version = image_toolchain_version(tc, ctx.image, ctx.vars);
  if (!version) {
    r.uncertain_exit();
    return r.settle();
  }
  auto bad = unsatisfiable_requirement(*version, reqs);
  if (bad && !ctx.version_checked) {
    ctx.version_checked = true;
    std::string need = bad->op + " " + version_text(bad->version);
    r.conflict(make_warning(FaultType::ImageVersionMismatch, line, ctx.image,
                            std::string(manifest_name(tc)) + " requires " +
                                std::string(toolchain_name(tc)) + " " + need + " but " +
                                ctx.image + " ships " + version_text(*version)));
  }
  return r.settle();
}

Step mock_from(const Instruction& instr, Context ctx, const MockSetup& setup) {
  int line = instr.line_start;
  auto workspace = ctx.workspace;
  if (instr.args.empty()) {
    return conflict_step(fresh_context(workspace), FaultType::SyntaxMistake, line, "FROM",
                         "FROM requires a base image");
  }
  if (instr.args.size() != 1 && !(instr.args.size() == 3 && lower(instr.args[1]) == "as")) {
    return conflict_step(fresh_context(workspace), FaultType::SyntaxMistake, line, "FROM",
                         "FROM takes an image and an optional 'AS name'");
  }
  VariableMap globals = global_vars(setup);
  ExpandedValue ref = expand_arg(instr.args[0], globals);
  MockResult r;
  if (ref.fuzzy || ref.text.empty()) {
    Context out = fresh_context(workspace);
    fuzz_all(out);
    r.uncertain_exit();
    return {r.settle(), std::move(out)};
  }
  if (const Context* stage = find_stage(setup, ref.text); stage != nullptr && ref.text.find(':') == std::string::npos) {
    return {r.settle(), *stage};
  }
  Context out = fresh_context(workspace);
  std::string image = normalize_image_ref(ref.text);
  const ImageSnapshot* snap = nullptr;
  if (setup.options.use_prior && setup.priors != nullptr) snap = setup.priors->find(image);
  if (ref.text == "scratch") {
    out.executables.names.clear();
  } else if (snap != nullptr) {
    out.vars = VariableMap{};
    for (const auto& [k, v] : snap->env) out.vars.set_precise(k, v);
    if (!snap->env.count("PATH")) out.vars.set_precise("PATH", kDefaultPath);
    out.vars.set_all_tracked(true);
    out.executables.names.insert(snap->executables.begin(), snap->executables.end());
    out.workdir = snap->workdir.empty() ? "/" : normalize_path(snap->workdir);
    out.user = snap->user.empty() ? "root" : snap->user;
    // The file layout of the image is unknown.
    fuzz_files(out);
  } else {
    log::debug("line {}: no snapshot for {}, context is fuzzy", line, image);
    fuzz_all(out);
    r.uncertain_exit();
  }
  out.image = image;
  for (Toolchain tc : {Toolchain::Ruby, Toolchain::Go}) {
    if (!image_provides(tc, image, out.vars)) continue;
    MockResult v = mock_version_check(tc, out, line);
    for (auto& w : v.warnings) r.conflict(w);
    if (v.exit_fuzzy) r.uncertain_exit();
  }
  return {r.settle(), std::move(out)};
}

// --- COPY / ADD -----------------------------------------------------------

Step mock_copy_add(const Instruction& instr, Context ctx, const MockSetup& setup) {
  int line = instr.line_start;
  const std::string kw = instr.keyword == Keyword::Add ? "ADD" : "COPY";
  MockResult r;
  std::vector<ExpandedValue> args;
  for (const auto& a : instr.args) args.push_back(expand_arg(a, ctx.vars));
  if (args.size() < 2) {
    r.conflict(make_warning(FaultType::InstructionMisuse, line, kw,
                            kw + " requires at least two arguments"));
    return {r.settle(), std::move(ctx)};
  }
  ExpandedValue dest = args.back();
  args.pop_back();
  bool dest_dir_like = ends_with(dest.text, "/") || dest.text == "." || dest.text == "./";
  ResolvedPath drp = resolve_path(dest, ctx);

  auto place_unknown = [&](const std::string& src_name) {
    if (drp.fuzzy) {
      fuzz_files(ctx);
      return;
    }
    StatResult dst = stat(ctx.container, drp.path);
    bool into_dir = dest_dir_like || (dst.found() && dst.kind == NodeKind::Directory);
    if (into_dir && !src_name.empty()) {
      place_fuzzy(ctx, join_path(drp.path, base_name(src_name)), NodeKind::Regular);
    } else {
      place_fuzzy(ctx, drp.path, into_dir ? NodeKind::Directory : NodeKind::Regular);
    }
  };

  if (auto from = instr.flag("from")) {
    ExpandedValue name = expand_arg(*from, ctx.vars);
    bool known = name.fuzzy || find_stage(setup, name.text) != nullptr ||
                 name.text.find_first_of(":/@") != std::string::npos ||
                 (setup.priors != nullptr && setup.priors->find(normalize_image_ref(name.text)));
    if (!known) {
      r.conflict(make_warning(FaultType::InstructionMisuse, line, name.text,
                              "invalid from flag value " + name.text +
                                  ": no such build stage"));
      return {r.settle(), std::move(ctx)};
    }
    // Contents of other stages and images are not tracked file by file.
    for (const auto& a : args) place_unknown(a.text);
    return {r.settle(), std::move(ctx)};
  }

  std::optional<uint16_t> chmod;
  if (auto m = instr.flag("chmod")) {
    try {
      chmod = static_cast<uint16_t>(std::stoi(*m, nullptr, 8) & 07777);
    } catch (const std::exception&) {
      r.conflict(make_warning(FaultType::InstructionMisuse, line, *m, "invalid --chmod value " + *m));
    }
  }

  // Resolve every source to workspace paths first; globs may expand to
  // several files.
  struct Source {
    ExpandedValue arg;
    std::vector<std::string> paths;
  };
  std::vector<Source> sources;
  size_t total = 0;
  const FileNode& ws = ctx.workspace_root();
  for (const auto& a : args) {
    Source s{a, {}};
    if (!a.fuzzy && !is_url(a.text)) {
      std::string rel = normalize_path("/" + a.text);
      if (has_glob(a.text)) {
        s.paths = glob_workspace(ws, rel);
      } else if (find_node(ws, rel) != nullptr) {
        s.paths.push_back(rel);
      }
    }
    total += std::max<size_t>(1, s.paths.size());
    sources.push_back(std::move(s));
  }
  if (total > 1 && !ends_with(dest.text, "/") && dest.text != "." && !dest.fuzzy) {
    r.conflict(make_warning(FaultType::InstructionMisuse, line, dest.text,
                            "When using " + kw +
                                " with more than one source file, the destination must be a "
                                "directory and end with a /"));
    return {r.settle(), std::move(ctx)};
  }

  for (const auto& src : sources) {
    if (src.arg.fuzzy) {
      place_unknown(src.arg.text);
      r.uncertain_exit();
      continue;
    }
    if (is_url(src.arg.text)) {
      if (instr.keyword == Keyword::Copy) {
        r.conflict(make_warning(FaultType::InstructionMisuse, line, src.arg.text,
                                "source can't be a URL for COPY"));
        continue;
      }
      place_unknown(src.arg.text);
      r.uncertain_exit();
      continue;
    }
    if (src.paths.empty()) {
      r.conflict(make_warning(FaultType::OuterFileNotFound, line, src.arg.text,
                              kw + " failed: file not found in build context or excluded by "
                                   ".dockerignore: " + src.arg.text));
      place_unknown(src.arg.text);
      continue;
    }
    if (drp.fuzzy) {
      fuzz_files(ctx);
      r.uncertain_exit();
      continue;
    }
    for (const auto& path : src.paths) {
      const FileNode& node = *find_node(ws, path);
      StatResult dst = stat(ctx.container, drp.path);
      bool into_dir = dest_dir_like || (dst.found() && dst.kind == NodeKind::Directory);
      if (instr.keyword == Keyword::Add && !node.is_dir() && is_archive(path)) {
        // Local archives are unpacked; their contents are unknown.
        StatResult st = stat(ctx.container, drp.path);
        if (st.found() && !st.fuzzy && st.kind == NodeKind::Regular) {
          r.conflict(make_warning(FaultType::InstructionMisuse, line, drp.path,
                                  "cannot extract into non-directory " + drp.path));
          continue;
        }
        FileNode* existing = find_node(ctx.container, drp.path);
        if (existing != nullptr && existing->is_dir()) {
          existing->fuzzy = true;
        } else {
          place_fuzzy(ctx, drp.path, NodeKind::Directory);
        }
        continue;
      }
      std::string target = drp.path;
      FileNode copy = node;
      set_origin(copy, path);
      if (chmod) set_mode_recursive(copy, *chmod);
      if (!node.is_dir() && into_dir) target = join_path(drp.path, base_name(path));
      StatResult tst = stat(ctx.container, target);
      bool presumed = tst.absent_fuzzy() || (tst.found() && tst.fuzzy);
      if (presumed) {
        r.presume();
        if (!setup.options.assumption) mark_fuzzy_recursive(copy);
      }
      try {
        if (node.is_dir()) {
          if (tst.found() && tst.kind == NodeKind::Regular && !tst.fuzzy) {
            r.conflict(make_warning(FaultType::InstructionMisuse, line, target,
                                    "cannot copy directory " + src.arg.text +
                                        " to non-directory " + target));
            continue;
          }
          // The directory itself is not copied, only its contents.
          copy.fuzzy = tst.found() ? tst.fuzzy : copy.fuzzy;
          merge_subtree(ctx.container, target, copy);
        } else if (tst.found() && tst.kind == NodeKind::Directory) {
          merge_subtree(ctx.container, join_path(target, base_name(path)), copy);
          target = join_path(target, base_name(path));
        } else {
          put_subtree(ctx.container, target, std::move(copy));
        }
      } catch (const ConflictFault& e) {
        r.conflict(make_warning(FaultType::InstructionMisuse, line, e.path(),
                                kw + " failed: " + e.what()));
        continue;
      }
      note_regulars(ctx, target);
    }
  }
  return {r.settle(), std::move(ctx)};
}

// --- WORKDIR --------------------------------------------------------------

Step mock_workdir(const Instruction& instr, Context ctx, const MockSetup& setup) {
  int line = instr.line_start;
  MockResult r;
  ExpandedValue p = expand_arg(instr.args_text, ctx.vars);
  if (p.text.empty() && !p.fuzzy) {
    return conflict_step(std::move(ctx), FaultType::SyntaxMistake, line, "WORKDIR",
                         "WORKDIR requires a path");
  }
  ResolvedPath rp = resolve_path(p, ctx);
  if (rp.fuzzy) {
    if (stat(ctx.container, rp.path).absent_precise()) place_fuzzy(ctx, rp.path, NodeKind::Directory);
    ctx.workdir = rp.path;
    ctx.workdir_fuzzy = true;
    r.uncertain_exit();
    return {r.settle(), std::move(ctx)};
  }
  StatResult st = stat(ctx.container, rp.path);
  if ((st.found() && st.kind == NodeKind::Regular && !st.fuzzy) ||
      (st.absent_precise() && st.blocked_by_file)) {
    return conflict_step(std::move(ctx), FaultType::InstructionMisuse, line, rp.path,
                         "cannot use " + rp.path + " as working directory: not a directory");
  }
  if (st.found() && st.kind == NodeKind::Regular) {
    put_subtree(ctx.container, rp.path, FileNode::directory(true));
    r.presume();
  } else if (st.absent_precise()) {
    put_subtree(ctx.container, rp.path, FileNode::directory());
  } else if (st.absent_fuzzy()) {
    // The image may or may not have it; take it as newly created.
    try {
      put_subtree(ctx.container, rp.path, FileNode::directory(!setup.options.assumption));
    } catch (const ConflictFault&) {
      place_fuzzy(ctx, rp.path, NodeKind::Directory);
    }
    r.presume();
  }
  ctx.workdir = rp.path;
  ctx.workdir_fuzzy = false;
  return {r.settle(), std::move(ctx)};
}

// --- ENV / ARG ------------------------------------------------------------

Step mock_env(const Instruction& instr, Context ctx, const MockSetup& setup) {
  int line = instr.line_start;
  auto pairs = split_env_args(instr);
  if (!pairs) {
    return conflict_step(std::move(ctx), FaultType::SyntaxMistake, line,
                         std::string(keyword_name(instr.keyword)), pairs.error().reason);
  }
  MockResult r;
  if (instr.keyword == Keyword::Env) {
    std::vector<std::pair<std::string, ExpandedValue>> values;
    for (const auto& p : *pairs) {
      if (!shell::is_valid_name(p.name)) {
        return conflict_step(std::move(ctx), FaultType::SyntaxMistake, line, p.name,
                             "invalid environment variable name " + p.name);
      }
      values.emplace_back(p.name, expand_arg(p.value.value_or(""), ctx.vars));
    }
    for (auto& [name, value] : values) {
      if (name == "PATH") {
        VarLookup old = ctx.vars.lookup("PATH");
        note_path_change(ctx, {old.value, old.state == VarState::Fuzzy}, value);
      }
      ctx.vars.set(name, value);
    }
    return {r.settle(), std::move(ctx)};
  }
  VariableMap globals = global_vars(setup);
  for (const auto& p : *pairs) {
    if (!shell::is_valid_name(p.name)) {
      return conflict_step(std::move(ctx), FaultType::SyntaxMistake, line, p.name,
                           "invalid ARG name " + p.name);
    }
    // ENV, including the image's, wins over ARG.
    if (ctx.vars.lookup(p.name).state == VarState::Precise && ctx.vars.entries().count(p.name)) {
      continue;
    }
    if (p.value) {
      ctx.vars.set(p.name, expand_arg(*p.value, ctx.vars));
      continue;
    }
    VarLookup g = globals.lookup(p.name);
    if (g.state == VarState::Precise) {
      ctx.vars.set_precise(p.name, g.value);
    } else {
      ctx.vars.set_fuzzy(p.name, g.value);
    }
  }
  return {r.settle(), std::move(ctx)};
}

// --- RUN ------------------------------------------------------------------

namespace {

bool is_posix_shell(std::string_view program) {
  std::string base = base_name(program);
  for (const char* s : {"sh", "bash", "dash", "ash", "zsh", "ksh"}) {
    if (base == s) return true;
  }
  return false;
}

MockResult run_shell_text(const std::string& script, Context& ctx, const MockSetup& setup, int line) {
  auto program = shell::parse_shell(script);
  if (!program) {
    MockResult r;
    r.conflict(make_warning(FaultType::SyntaxMistake, line, "RUN",
                            "shell syntax error: " + program.error().reason));
    return r.settle();
  }
  ShellSession session = ShellSession::for_context(ctx);
  return run_script(*program, ctx, session, setup, line);
}

}  // namespace

Step mock_run(const Instruction& instr, Context ctx, const MockSetup& setup) {
  int line = instr.line_start;
  MockResult r;
  if (!instr.exec_form) {
    if (!ctx.posix_shell) {
      fuzz_all(ctx);
      return {MockResult::fuzzy(), std::move(ctx)};
    }
    r = run_shell_text(instr.args_text, ctx, setup, line);
  } else if (instr.args.empty()) {
    return conflict_step(std::move(ctx), FaultType::SyntaxMistake, line, "RUN", "RUN requires a command");
  } else if (instr.args.size() >= 3 && is_posix_shell(instr.args[0]) && instr.args[1] == "-c") {
    ShellSession probe = ShellSession::for_context(ctx);
    ExecLookup sh = lookup_executable({instr.args[0], false}, ctx);
    if (sh == ExecLookup::NotFound) {
      r.conflict(make_warning(FaultType::CommandNotFound, line, instr.args[0],
                              instr.args[0] + ": not found"));
      apply_autofix(r, ctx);
    }
    MockResult inner = run_shell_text(instr.args[2], ctx, setup, line);
    for (auto& w : inner.warnings) r.conflict(w);
    r.exit_fuzzy = r.exit_fuzzy || inner.exit_fuzzy || inner.status == MockStatus::Fuzzy;
    r.settle();
  } else {
    std::vector<ExpandedValue> argv;
    for (const auto& a : instr.args) argv.push_back({a, false});
    ShellSession session = ShellSession::for_context(ctx);
    r = run_argv(argv, ctx, session, setup, line);
  }
  return {std::move(r), std::move(ctx)};
}

// --- Remaining instructions -----------------------------------------------

Step mock_instruction(const Instruction& instr, Context ctx, const MockSetup& setup) {
  int line = instr.line_start;
  if (instr.before_first_from) {
    return conflict_step(std::move(ctx), FaultType::SyntaxMistake, line, instr.keyword_text,
                         instr.keyword_text + " before the first FROM");
  }
  switch (instr.keyword) {
    case Keyword::From:
      return mock_from(instr, std::move(ctx), setup);
    case Keyword::Copy:
    case Keyword::Add:
      return mock_copy_add(instr, std::move(ctx), setup);
    case Keyword::Workdir:
      return mock_workdir(instr, std::move(ctx), setup);
    case Keyword::Env:
    case Keyword::Arg:
      return mock_env(instr, std::move(ctx), setup);
    case Keyword::Run:
      return mock_run(instr, std::move(ctx), setup);
    case Keyword::User: {
      ExpandedValue u = expand_arg(instr.args_text, ctx.vars);
      ctx.user = u.text;
      return {u.fuzzy ? MockResult::fuzzy() : MockResult::ok(), std::move(ctx)};
    }
    case Keyword::Volume: {
      for (const auto& a : instr.args) {
        ResolvedPath rp = resolve_path(expand_arg(a, ctx.vars), ctx);
        if (rp.fuzzy) {
          fuzz_files(ctx);
          continue;
        }
        FileNode* n = find_node(ctx.container, rp.path);
        if (n != nullptr && n->is_dir()) {
          mark_fuzzy_recursive(*n);
        } else {
          place_fuzzy(ctx, rp.path, NodeKind::Directory);
        }
      }
      return {MockResult::ok(), std::move(ctx)};
    }
    case Keyword::Shell:
      ctx.posix_shell = !instr.args.empty() && is_posix_shell(instr.args[0]);
      return {MockResult::ok(), std::move(ctx)};
    case Keyword::Unknown:
      return conflict_step(std::move(ctx), FaultType::SyntaxMistake, line, instr.keyword_text,
                           "unknown instruction: " + instr.keyword_text);
    case Keyword::Cmd:
    case Keyword::Entrypoint:
    case Keyword::Healthcheck:
    case Keyword::Expose:
    case Keyword::Label:
    case Keyword::Maintainer:
    case Keyword::Onbuild:
    case Keyword::Stopsignal:
      break;
  }
  return {MockResult::ok(), std::move(ctx)};
}

MockResult check_startup_command(const Instruction& instr, const Context& ctx, const MockSetup&) {
  MockResult r;
  int line = instr.line_start;
  std::vector<std::string> exec_args;
  bool exec_form = instr.exec_form;
  if (instr.keyword == Keyword::Healthcheck) {
    if (!instr.args.empty() && lower(instr.args[0]) == "none" && !instr.exec_form) return r;
    exec_args = instr.args;
  } else {
    exec_args = instr.args;
  }
  auto check = [&](const ExpandedValue& name) {
    if (name.fuzzy || name.text.empty()) return;
    if (lookup_executable(name, ctx) == ExecLookup::NotFound) {
      r.conflict(make_warning(FaultType::CommandNotFound, line, name.text,
                              name.text + ": executable file not found in $PATH"));
    }
  };
  if (exec_form) {
    if (!exec_args.empty()) check({exec_args[0], false});
    return r.settle();
  }
  if (!ctx.posix_shell) return r.settle();
  auto program = shell::parse_shell(instr.args_text);
  if (!program) return r.settle();
  ExpandedValue home = home_of(ctx.vars);
  for (const auto& list : program->items) {
    for (const auto& pipeline : list.pipelines) {
      for (const auto& cmd : pipeline.commands) {
        const auto* simple = std::get_if<shell::SimpleCommand>(&cmd);
        if (simple == nullptr || simple->words.empty()) continue;
        size_t i = 0;
        ExpandedValue name = shell::expand_word(simple->words[0], ctx.vars, home);
        while (name.text == "exec" && !name.fuzzy && ++i < simple->words.size()) {
          name = shell::expand_word(simple->words[i], ctx.vars, home);
        }
        check(name);
      }
    }
  }
  return r.settle();
}

}  // namespace dockmock
