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

#include <functional>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "dockmock/context.hpp"
#include "dockmock/dockerfile.hpp"
#include "dockmock/faults.hpp"
#include "dockmock/prior.hpp"
#include "dockmock/shell.hpp"
#include "dockmock/version_check.hpp"

namespace dockmock {

enum class MockStatus { PreciseOk, Conflict, Fuzzy };

std::string_view mock_status_name(MockStatus status);

struct MockResult {
  MockStatus status = MockStatus::PreciseOk;
  /// Non-empty iff status is Conflict.
  std::vector<Warning> warnings;
  bool exit_fuzzy = false;
  /// A fuzzy attribute was consumed and presumed real.
  bool assumed = false;
  /// With assumption disabled, the rest of the `&&` chain is not analyzed.
  bool halted = false;

  static MockResult ok() { return {}; }
  static MockResult fuzzy();

  void conflict(Warning w);
  /// Marks the exit status unknowable without recording a presumption.
  void uncertain_exit();
  /// Records that fuzzy context was taken as real.
  void presume();
  /// Final status from the collected state.
  MockResult& settle();
};

struct AnalysisOptions {
  /// Presume fuzzy context consumed by a mock is real and keep going.
  bool assumption = true;
  /// Initialize FROM from image snapshots when available.
  bool use_prior = true;
};

enum class Integrity { Complete, Partial };

/// Context slices a partial mock may change without modeling them.
/// Paths may start with `$CWD` or a variable reference such as `$HOME`.
struct FuzzScope {
  bool variables = false;
  bool files = false;
  bool executables = false;
  std::vector<std::string> paths;

  bool none() const { return !variables && !files && !executables && paths.empty(); }
};

struct MockSpec {
  std::string name;
  Integrity integrity = Integrity::Complete;
  FuzzScope fuzz_scope;
  /// Overrides keyed by the first non-option argument, e.g. "install".
  std::map<std::string, FuzzScope> subcommand_scopes;

  const FuzzScope& scope_for(std::string_view subcommand) const;
};

/// Per-RUN shell state. Variables and the working directory do not outlive
/// the RUN instruction.
struct ShellSession {
  VariableMap vars;
  std::string cwd = "/";
  bool cwd_fuzzy = false;
  bool errexit = false;
  /// PATH was modified inside this RUN.
  bool path_changed = false;
  /// Effects may or may not happen: created nodes are fuzzy, removals only
  /// fuzz, warnings are discarded by the caller.
  bool uncertain = false;

  ExpandedValue cwd_value() const { return {cwd, cwd_fuzzy}; }
  static ShellSession for_context(const Context& ctx);
};

class MockRegistry;

struct CommandCall {
  std::vector<ExpandedValue> argv;
  int line = 0;
  const AnalysisOptions* options = nullptr;
  /// Runs a nested command (for `env`, `command`).
  std::function<MockResult(const std::vector<ExpandedValue>&)> run_nested;
};

using CommandHandler = std::function<MockResult(const CommandCall&, Context&, ShellSession&)>;

/// Command mocks by name. The built-in registry is immutable; tests and
/// embedders may copy it and register more.
class MockRegistry {
 public:
  struct Entry {
    MockSpec spec;
    CommandHandler handler;
  };

  void add(MockSpec spec, CommandHandler handler);
  const Entry* find(std::string_view name) const;
  std::vector<std::string> names() const;

  static MockRegistry with_builtin_mocks();
  static const MockRegistry& builtin();

 private:
  std::map<std::string, Entry, std::less<>> entries_;
};

/// Everything a mock may consult besides the context.
struct MockSetup {
  AnalysisOptions options;
  const SnapshotStore* priors = nullptr;
  const MockRegistry* registry = nullptr;
  /// ARG values declared before the first FROM.
  const VariableMap* global_args = nullptr;
  /// Stage aliases (lowercase) and final contexts of earlier stages.
  const std::vector<std::pair<std::string, Context>>* stages = nullptr;

  const MockRegistry& commands() const { return registry ? *registry : MockRegistry::builtin(); }
};

struct Step {
  MockResult result;
  Context context;
};

/// File operations shared by the command mocks. Honors session
/// uncertainty and path fuzziness, and records presumptions in `result`.
class MockFs {
 public:
  MockFs(Context& ctx, ShellSession& session, MockResult& result, int line);

  ResolvedPath resolve(const ExpandedValue& p) const;
  /// stat() that degrades to fuzzy answers for fuzzy paths.
  StatResult stat(const ResolvedPath& p) const;

  /// Creates or replaces a node; intermediate directories are created.
  void create(const ResolvedPath& p, FileNode node);
  void create_dir(const ResolvedPath& p, bool parents);
  void create_file(const ResolvedPath& p);
  void remove(const ResolvedPath& p);
  /// Marks the path fuzzy without asserting anything about it.
  void fuzz(const ResolvedPath& p);

  /// Adds a Conflict warning unless the session is uncertain.
  void conflict(FaultType type, const std::string& subject, const std::string& message);

  bool node_is_precise_dir(const ResolvedPath& p) const;
  const FileNode* node(const ResolvedPath& p) const;

  Context& ctx;
  ShellSession& session;
  MockResult& result;
  int line;
};

/// Splits `args` into options and operands; `--` ends option parsing.
struct ParsedArgs {
  std::string flags;                     // single-letter flags seen
  std::vector<std::string> long_flags;   // --name or --name=value
  std::vector<ExpandedValue> operands;
  std::map<char, std::string> values;    // arguments of flags_with_value
  bool has(char flag) const { return flags.find(flag) != std::string::npos; }
  bool has_long(std::string_view name) const;
};
ParsedArgs parse_args(const std::vector<ExpandedValue>& argv, std::string_view flags_with_value = {});

// Instruction mocks. Each takes the context by value and returns the new one.
Step mock_from(const Instruction& instr, Context ctx, const MockSetup& setup);
Step mock_copy_add(const Instruction& instr, Context ctx, const MockSetup& setup);
Step mock_workdir(const Instruction& instr, Context ctx, const MockSetup& setup);
Step mock_env(const Instruction& instr, Context ctx, const MockSetup& setup);
Step mock_run(const Instruction& instr, Context ctx, const MockSetup& setup);
Step mock_instruction(const Instruction& instr, Context ctx, const MockSetup& setup);

/// Checks the command a CMD/ENTRYPOINT/HEALTHCHECK would start for
/// CommandNotFound; nothing is executed.
MockResult check_startup_command(const Instruction& instr, const Context& ctx,
                                 const MockSetup& setup);

/// Compares workspace manifests against the stage's base image.
MockResult mock_version_check(Toolchain tc, Context& ctx, int line,
                              const std::string* manifest_text = nullptr);

/// Runs one simple command through executable lookup and its mock.
Step dispatch_command(const shell::SimpleCommand& cmd, Context ctx, const MockSetup& setup,
                      int line = 0);
MockResult dispatch_command(const shell::SimpleCommand& cmd, Context& ctx, ShellSession& session,
                            const MockSetup& setup, int line);

/// Runs a command given as already-expanded words.
Step run_command(const std::vector<std::string>& argv, Context ctx, const MockSetup& setup,
                 int line = 0);
MockResult run_argv(const std::vector<ExpandedValue>& argv, Context& ctx, ShellSession& session,
                    const MockSetup& setup, int line);

/// Interprets a parsed script against the context.
MockResult run_script(const shell::ShellProgram& program, Context& ctx, ShellSession& session,
                      const MockSetup& setup, int line);

/// Applies the post-conflict continuation for every warning: missing files
/// were already created fuzzy by the mock and option misuse was corrected;
/// a missing command is added to the executables; anything else fuzzes
/// the whole context.
void apply_autofix(const MockResult& result, Context& ctx);

/// Creates `path` as a fuzzy node, along with any missing directories on
/// the way (also fuzzy). Stands for what a corrected Dockerfile provides.
void place_fuzzy(Context& ctx, const std::string& path, NodeKind kind);

/// Applies a partial mock's declared scope.
void apply_scope(const FuzzScope& scope, Context& ctx, ShellSession& session);

}  // namespace dockmock
