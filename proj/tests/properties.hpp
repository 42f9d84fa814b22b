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

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

#include "dockmock/context.hpp"
#include "dockmock/dockerfile.hpp"
#include "dockmock/mocks.hpp"
#include "dockmock/shell.hpp"

namespace dockmock::properties {

namespace fs = std::filesystem;

template <typename T>
const T& pick(std::mt19937& rng, const std::vector<T>& items) {
  return items[std::uniform_int_distribution<size_t>(0, items.size() - 1)(rng)];
}

inline bool chance(std::mt19937& rng, double p) { return std::bernoulli_distribution(p)(rng); }

inline const std::vector<std::string>& path_pool() {
  static const std::vector<std::string> pool = {"/a",     "/a/b",  "/a/b/c", "/app",  "/app/src", "/app/x",
                                                "/etc",   "/etc/x", "/usr",  "/usr/bin", "/opt/y", "/b"};
  return pool;
}

/// Tree built from the pool, each node independently fuzzy.
inline FileNode random_tree(std::mt19937& rng, double fuzzy_rate) {
  FileNode root = FileNode::directory(chance(rng, fuzzy_rate / 2));
  for (const auto& p : path_pool()) {
    if (!chance(rng, 0.4)) continue;
    try {
      put_node(root, p, chance(rng, 0.6) ? NodeKind::Directory : NodeKind::Regular, chance(rng, fuzzy_rate));
    } catch (const std::exception&) {
    }
  }
  return root;
}

inline Context random_context(std::mt19937& rng) {
  Context ctx = fresh_context();
  ctx.container = random_tree(rng, 0.3);
  ctx.container_fuzzy = chance(rng, 0.1);
  auto ws = std::make_shared<Workspace>();
  ws->root = random_tree(rng, 0.0);
  ws->root.fuzzy = false;
  ctx.workspace = ws;
  for (const char* name : {"cp", "mv", "rm", "mkdir", "touch", "ls", "cat", "chmod", "apt-get", "pip", "npm",
                           "go", "make"}) {
    if (chance(rng, 0.7)) ctx.executables.names.insert(name);
  }
  ctx.executables.fuzzy = chance(rng, 0.3);
  ctx.vars.set_all_tracked(chance(rng, 0.5));
  if (chance(rng, 0.5)) ctx.vars.set_fuzzy("F", "/app");
  if (chance(rng, 0.5)) ctx.vars.set_precise("P", "/a");
  ctx.workdir = chance(rng, 0.5) ? "/" : "/app";
  ctx.workdir_fuzzy = chance(rng, 0.2);
  ctx.user = chance(rng, 0.8) ? "root" : "app";
  return ctx;
}

inline std::string random_operand(std::mt19937& rng) {
  static const std::vector<std::string> extra = {"$F", "$P/b", "${F}/x", "nope", "a", ".", "/", "$(pwd)/z"};
  return chance(rng, 0.6) ? pick(rng, path_pool()) : pick(rng, extra);
}

inline std::string random_command(std::mt19937& rng) {
  static const std::vector<std::string> names = {"cp",   "cp -r", "mv",      "rm",          "rm -rf", "mkdir",
                                                 "mkdir -p", "touch", "cd",  "chmod +x",    "ls",     "cat",
                                                 "echo", "apt-get install -y", "pip install", "go build",
                                                 "make", "unknown-tool", "$F", "export X=1", "test -f"};
  std::string cmd = pick(rng, names);
  int n = std::uniform_int_distribution<int>(0, 3)(rng);
  for (int i = 0; i < n; ++i) cmd += " " + random_operand(rng);
  return cmd;
}

inline std::string random_script(std::mt19937& rng) {
  static const std::vector<std::string> seps = {" && ", " || ", "; ", " | "};
  std::string s = random_command(rng);
  int n = std::uniform_int_distribution<int>(0, 3)(rng);
  for (int i = 0; i < n; ++i) s += pick(rng, seps) + random_command(rng);
  return s;
}

/// One random Dockerfile instruction (not FROM).
inline std::string random_instruction(std::mt19937& rng) {
  switch (std::uniform_int_distribution<int>(0, 5)(rng)) {
    case 0: return "RUN " + random_script(rng);
    case 1: return "COPY " + random_operand(rng) + " " + random_operand(rng);
    case 2: return "WORKDIR " + random_operand(rng);
    case 3: return "ENV " + std::string(chance(rng, 0.5) ? "A=1" : "B=$F");
    case 4: return "ADD " + random_operand(rng) + " " + random_operand(rng) + "/";
    default: return "RUN set -e; " + random_script(rng);
  }
}

struct SilenceStats {
  int trials = 0;
  int violations = 0;
  int fuzzy = 0;
  int conflict = 0;
  std::string first_violation;
};

/// A fuzzy outcome never carries warnings; a conflict always does.
inline SilenceStats check_fuzzy_silence(uint32_t seed, int trials) {
  std::mt19937 rng(seed);
  SilenceStats st;
  MockSetup setup;
  for (int i = 0; i < trials; ++i) {
    Context ctx = random_context(rng);
    std::string text = random_instruction(rng);
    auto ast = parse_dockerfile("FROM scratch\n" + text + "\n");
    if (!ast || ast->instructions.size() < 2) continue;
    Step step = mock_instruction(ast->instructions.back(), std::move(ctx), setup);
    ++st.trials;
    const MockResult& r = step.result;
    bool ok = true;
    if (r.status == MockStatus::Fuzzy) {
      ++st.fuzzy;
      ok = r.warnings.empty();
    } else if (r.status == MockStatus::Conflict) {
      ++st.conflict;
      ok = !r.warnings.empty();
    } else {
      ok = r.warnings.empty();
    }
    if (!ok && st.violations++ == 0) st.first_violation = text;
  }
  return st;
}

struct PrecisionStats {
  int trials = 0;
  int violations = 0;
  std::string first_violation;
};

/// Complete command mocks, run directly, never fuzz the whole file tree
/// or give up on variable tracking.
inline PrecisionStats check_complete_precision(uint32_t seed, int trials) {
  std::mt19937 rng(seed);
  PrecisionStats st;
  const MockRegistry& reg = MockRegistry::builtin();
  std::vector<std::string> complete;
  for (const auto& n : reg.names()) {
    if (reg.find(n)->spec.integrity == Integrity::Complete) complete.push_back(n);
  }
  AnalysisOptions options;
  for (int i = 0; i < trials; ++i) {
    Context ctx = random_context(rng);
    ctx.container_fuzzy = false;
    ctx.workdir_fuzzy = false;
    ctx.vars.set_all_tracked(true);
    const std::string& name = pick(rng, complete);
    CommandCall call;
    call.argv.push_back({name, false});
    int n = std::uniform_int_distribution<int>(0, 3)(rng);
    for (int k = 0; k < n; ++k) call.argv.push_back({random_operand(rng), false});
    call.line = 1;
    call.options = &options;
    call.run_nested = [](const std::vector<ExpandedValue>&) { return MockResult::fuzzy(); };
    ShellSession session = ShellSession::for_context(ctx);
    try {
      reg.find(name)->handler(call, ctx, session);
    } catch (const std::exception&) {
    }
    ++st.trials;
    if (ctx.container_fuzzy || !ctx.vars.all_tracked()) {
      if (st.violations++ == 0) st.first_violation = name;
    }
  }
  return st;
}

// Shadow execution: random command sequences run both through the mocks
// and through the real /bin/sh in a scratch directory.

inline const std::vector<std::string>& shadow_names() {
  static const std::vector<std::string> names = {"a", "b", "c", "a/b", "b/c", "c/a"};
  return names;
}

inline std::string random_shadow_command(std::mt19937& rng) {
  auto p = [&] { return pick(rng, shadow_names()); };
  static const std::discrete_distribution<int> kinds({2, 9, 3, 2, 1, 6, 1, 7, 3, 3, 1});
  auto dist = kinds;
  switch (dist(rng)) {
    case 0: return "mkdir " + p();
    case 1: return "mkdir -p " + p();
    case 2: return (chance(rng, 0.5) ? "cp " : "cp -r ") + p() + " " + p();
    case 3: return "mv " + p() + " " + p();
    case 4: return "rm " + p();
    case 5: return "rm -rf " + p();
    case 6: return "rm -r " + p();
    case 7: return "touch " + pick(rng, std::vector<std::string>{"a", "b", "c", p()});
    case 8: return "echo x > " + p();
    case 9: return "echo " + p();
    default: return "cd " + p();
  }
}

inline std::vector<std::string> random_sequence(std::mt19937& rng, int max_len) {
  std::vector<std::string> seq;
  int n = std::uniform_int_distribution<int>(1, max_len)(rng);
  for (int i = 0; i < n; ++i) seq.push_back(random_shadow_command(rng));
  return seq;
}

/// The built-in mocks with `touch` declared complete.
inline const MockRegistry& shadow_registry() {
  static const MockRegistry reg = [] {
    MockRegistry r = MockRegistry::with_builtin_mocks();
    MockSpec spec;
    spec.name = "touch";
    r.add(spec, r.find("touch")->handler);
    return r;
  }();
  return reg;
}

struct ShadowOutcome {
  int mock_failed_at = 0;  // 1-based; 0 when every command succeeded
  int real_failed_at = 0;
  bool trees_agree = true;
  std::string detail;

  bool agrees() const { return mock_failed_at == real_failed_at && trees_agree; }
};

/// Files and directories below `dir`, directories with a trailing '/'.
inline std::vector<std::string> real_listing(const fs::path& dir) {
  std::vector<std::string> out;
  for (auto it = fs::recursive_directory_iterator(dir); it != fs::recursive_directory_iterator(); ++it) {
    std::string rel = fs::relative(it->path(), dir).generic_string();
    out.push_back(it->is_directory() ? rel + "/" : rel);
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// A fuzzy mock node matches anything at its path, including nothing.
inline void compare_trees(const FileNode& mock, const fs::path& real, const std::string& rel,
                          std::string& detail) {
  if (mock.fuzzy) return;
  std::error_code ec;
  auto status = fs::symlink_status(real, ec);
  if (ec || !fs::exists(status)) {
    detail += "missing in shell: " + rel + "\n";
    return;
  }
  if (mock.is_dir() != fs::is_directory(status)) {
    detail += "kind differs: " + rel + "\n";
    return;
  }
  if (!mock.is_dir()) return;
  for (const auto& [name, child] : mock.children) compare_trees(child, real / name, rel + "/" + name, detail);
  for (const auto& entry : fs::directory_iterator(real)) {
    std::string name = entry.path().filename().string();
    if (!mock.children.count(name)) detail += "missing in mock: " + rel + "/" + name + "\n";
  }
}

inline fs::path scratch_dir(const std::string& tag) {
  fs::path dir = fs::temp_directory_path() /
                 ("dockmock-shadow-" + std::to_string(::getpid()) + "-" + tag);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

/// Runs `seq` in `dir` with /bin/sh, stopping at the first failure.
/// Returns the 1-based index of the failing command, 0 if none failed.
inline int run_real(const std::vector<std::string>& seq, const fs::path& dir) {
  std::ostringstream script;
  script << "cd '" << dir.string() << "' || exit 250\n";
  for (size_t i = 0; i < seq.size(); ++i) {
    script << "{ " << seq[i] << "; } 2>/dev/null >/dev/null || exit " << (i + 1) << "\n";
  }
  script << "exit 0\n";
  fs::path file = dir.string() + ".sh";
  {
    std::ofstream(file) << script.str();
  }
  int status = std::system(("/bin/sh '" + file.string() + "'").c_str());
  fs::remove(file);
  return WIFEXITED(status) ? WEXITSTATUS(status) : 255;
}

inline ShadowOutcome shadow_run(const std::vector<std::string>& seq, const std::string& tag) {
  ShadowOutcome out;
  fs::path dir = scratch_dir(tag);
  out.real_failed_at = run_real(seq, dir);

  Context ctx = fresh_context();
  for (const char* name : {"cp", "mv", "rm", "mkdir", "touch", "echo", "cd"}) ctx.executables.names.insert(name);
  ctx.vars.set_precise("HOME", "/root");
  ctx.vars.set_all_tracked(true);
  put_node(ctx.container, "/sb", NodeKind::Directory, false);
  ShellSession session = ShellSession::for_context(ctx);
  session.cwd = "/sb";
  MockSetup setup;
  setup.registry = &shadow_registry();
  for (size_t i = 0; i < seq.size(); ++i) {
    auto program = shell::parse_shell(seq[i]);
    if (!program) {
      out.mock_failed_at = static_cast<int>(i + 1);
      break;
    }
    MockResult r = run_script(*program, ctx, session, setup, static_cast<int>(i + 1));
    if (r.status == MockStatus::Conflict) {
      out.mock_failed_at = static_cast<int>(i + 1);
      break;
    }
  }
  const FileNode* sb = find_node(ctx.container, "/sb");
  if (sb == nullptr) {
    out.detail = "sandbox root removed in mock\n";
  } else {
    compare_trees(*sb, dir, "", out.detail);
  }
  out.trees_agree = out.detail.empty();
  fs::remove_all(dir);
  return out;
}

struct ShadowStats {
  int sequences = 0;
  int agreed = 0;
  int failing = 0;
  double seconds = 0;
  std::string first_disagreement;
};

inline ShadowStats check_shadow(uint32_t seed, int sequences, int max_len) {
  std::mt19937 rng(seed);
  ShadowStats st;
  auto start = std::chrono::steady_clock::now();
  for (int i = 0; i < sequences; ++i) {
    auto seq = random_sequence(rng, max_len);
    ShadowOutcome o = shadow_run(seq, std::to_string(seed) + "-" + std::to_string(i));
    ++st.sequences;
    if (o.real_failed_at != 0) ++st.failing;
    if (o.agrees()) {
      ++st.agreed;
    } else if (st.first_disagreement.empty()) {
      std::ostringstream m;
      m << "mock failed at " << o.mock_failed_at << ", shell at " << o.real_failed_at << ":";
      for (const auto& c : seq) m << "\n  " << c;
      m << "\n" << o.detail;
      st.first_disagreement = m.str();
    }
  }
  st.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return st;
}

}  // namespace dockmock::properties
