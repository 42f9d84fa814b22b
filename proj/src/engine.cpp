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

#include "dockmock/engine.hpp"

#include <algorithm>
#include <set>
#include <tuple>

#include "dockmock/log.hpp"

namespace dockmock {

namespace {

std::string lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

std::string stage_alias(const Instruction& from) {
  if (from.args.size() == 3 && lower(from.args[1]) == "as") return lower(from.args[2]);
  return {};
}

// ARG instructions ahead of the first FROM, visible to FROM lines.
VariableMap collect_global_args(const DockerfileAst& ast) {
  VariableMap globals;
  globals.set_all_tracked(true);
  for (const auto& instr : ast.instructions) {
    if (instr.keyword == Keyword::From) break;
    if (instr.keyword != Keyword::Arg) continue;
    auto pairs = split_env_args(instr);
    if (!pairs) continue;
    for (const auto& p : *pairs) {
      if (!p.value) {
        globals.set_fuzzy(p.name);
        continue;
      }
      auto word = shell::parse_word(*p.value);
      if (!word) {
        globals.set_fuzzy(p.name);
        continue;
      }
      globals.set(p.name, shell::expand_word(*word, globals, {"~", false}));
    }
  }
  return globals;
}

class Run {
 public:
  Run(const DockerfileAst& ast, std::shared_ptr<const Workspace> workspace, MockSetup setup)
      : ast_(ast), workspace_(std::move(workspace)), setup_(setup) {}

  AnalysisReport go() {
    VariableMap globals = collect_global_args(ast_);
    setup_.global_args = &globals;
    setup_.stages = &stages_;
    Context ctx = fresh_context(workspace_);
    bool seen_from = false;
    std::string alias;
    for (const auto& instr : ast_.instructions) {
      if (instr.keyword == Keyword::Arg && !seen_from) {
        report_.outcomes.push_back({instr.line_start, instr.keyword, MockStatus::PreciseOk});
        continue;
      }
      if (instr.keyword == Keyword::From) {
        if (seen_from) stages_.emplace_back(alias, ctx);
        seen_from = true;
        alias = stage_alias(instr);
        startup_.clear();
      }
      if (instr.keyword == Keyword::Cmd || instr.keyword == Keyword::Entrypoint ||
          instr.keyword == Keyword::Healthcheck) {
        startup_[instr.keyword] = &instr;
      }
      Step step = mock_instruction(instr, std::move(ctx), setup_);
      report_.outcomes.push_back({instr.line_start, instr.keyword, step.result.status});
      if (step.result.status == MockStatus::Conflict) {
        for (const auto& w : step.result.warnings) add(w);
        apply_autofix(step.result, step.context);
      }
      log::debug("line {}: {} -> {}", instr.line_start, keyword_name(instr.keyword),
                 mock_status_name(step.result.status));
      ctx = std::move(step.context);
    }
    if (!seen_from) {
      int line = ast_.instructions.empty() ? 1 : ast_.instructions.front().line_start;
      add(make_warning(FaultType::SyntaxMistake, line, "FROM",
                       "no FROM instruction: a base image is required"));
    } else {
      check_startup(ctx);
    }
    report_.context_final = std::move(ctx);
    std::stable_sort(report_.warnings.begin(), report_.warnings.end(),
                     [](const Warning& a, const Warning& b) { return a.line < b.line; });
    return std::move(report_);
  }

 private:
  void add(const Warning& w) {
    auto key = std::make_tuple(w.fault_type, w.line, w.subject);
    if (!seen_.insert(key).second) return;
    report_.warnings.push_back(w);
  }

  // Startup commands of the final image, checked against its executables.
  void check_startup(const Context& ctx) {
    for (auto kw : {Keyword::Entrypoint, Keyword::Cmd, Keyword::Healthcheck}) {
      auto it = startup_.find(kw);
      if (it == startup_.end()) continue;
      if (kw == Keyword::Cmd && startup_.count(Keyword::Entrypoint)) continue;
      MockResult r = check_startup_command(*it->second, ctx, setup_);
      for (const auto& w : r.warnings) add(w);
    }
  }

  const DockerfileAst& ast_;
  std::shared_ptr<const Workspace> workspace_;
  MockSetup setup_;
  std::vector<std::pair<std::string, Context>> stages_;
  std::map<Keyword, const Instruction*> startup_;
  std::set<std::tuple<FaultType, int, std::string>> seen_;
  AnalysisReport report_;
};

}  // namespace

AnalysisReport analyze(const DockerfileAst& ast, std::shared_ptr<const Workspace> workspace,
                       const SnapshotStore* priors, AnalysisOptions options,
                       const MockRegistry* registry) {
  if (!workspace) workspace = std::make_shared<Workspace>();
  MockSetup setup;
  setup.options = options;
  setup.priors = priors;
  setup.registry = registry;
  return Run(ast, std::move(workspace), setup).go();
}

AnalysisReport analyze_text(std::string_view dockerfile, std::shared_ptr<const Workspace> workspace,
                            const SnapshotStore* priors, AnalysisOptions options,
                            const MockRegistry* registry) {
  auto ast = parse_dockerfile(dockerfile);
  if (!ast) {
    AnalysisReport report;
    report.warnings.push_back(make_warning(FaultType::SyntaxMistake, std::max(1, ast.error().line),
                                           "Dockerfile", ast.error().reason));
    report.context_final = fresh_context(workspace);
    return report;
  }
  return analyze(*ast, std::move(workspace), priors, options, registry);
}

}  // namespace dockmock
