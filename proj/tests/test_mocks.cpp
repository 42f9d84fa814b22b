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

#include <gtest/gtest.h>

#include "dockmock/prior.hpp"
#include "test_util.hpp"

namespace dockmock {
namespace {

using testing::instruction;
using testing::make_workspace;
using testing::precise_context;

SnapshotStore test_priors() { return SnapshotStore::load(testing::data_dir() / "priors.json"); }

MockSetup setup_with(const SnapshotStore* priors = nullptr) {
  MockSetup s;
  s.priors = priors;
  return s;
}

Step run(const std::vector<std::string>& argv, Context ctx) {
  return run_command(argv, std::move(ctx), MockSetup{});
}

// --- FROM ---

TEST(MockFrom, SnapshotInitializesPreciseEnvironment) {
  SnapshotStore priors = test_priors();
  Step s = mock_from(instruction("FROM node:12"), fresh_context(), setup_with(&priors));
  EXPECT_EQ(s.result.status, MockStatus::PreciseOk);
  EXPECT_TRUE(s.context.executables.names.count("npm"));
  EXPECT_TRUE(s.context.executables.names.count("node"));
  EXPECT_FALSE(s.context.executables.fuzzy);
  VarLookup v = s.context.vars.lookup("NODE_VERSION");
  EXPECT_EQ(v.state, VarState::Precise);
  EXPECT_EQ(v.value, "12");
  EXPECT_EQ(s.context.vars.lookup("HOME").value, "/root");
  EXPECT_TRUE(s.context.container_fuzzy);
  EXPECT_EQ(s.context.image, "node:12");
}

TEST(MockFrom, UnknownImageIsFuzzyWithoutWarning) {
  SnapshotStore priors = test_priors();
  Step s = mock_from(instruction("FROM unknown/img"), fresh_context(), setup_with(&priors));
  EXPECT_EQ(s.result.status, MockStatus::Fuzzy);
  EXPECT_TRUE(s.result.warnings.empty());
  EXPECT_TRUE(s.context.executables.fuzzy);
  EXPECT_TRUE(s.context.container_fuzzy);
  EXPECT_FALSE(s.context.vars.all_tracked());
}

TEST(MockFrom, MissingImageIsSyntaxMistake) {
  Instruction from;
  from.keyword = Keyword::From;
  from.keyword_text = "FROM";
  from.line_start = 3;
  Step s = mock_from(from, fresh_context(), MockSetup{});
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  EXPECT_EQ(s.result.warnings[0].fault_type, FaultType::SyntaxMistake);
  EXPECT_EQ(s.result.warnings[0].line, 3);
}

TEST(MockFrom, PriorsCanBeDisabled) {
  SnapshotStore priors = test_priors();
  MockSetup setup = setup_with(&priors);
  setup.options.use_prior = false;
  Step s = mock_from(instruction("FROM node:12"), fresh_context(), setup);
  EXPECT_TRUE(s.context.executables.fuzzy);
}

TEST(MockFrom, ScratchIsEmptyAndPrecise) {
  Step s = mock_from(instruction("FROM scratch"), fresh_context(), MockSetup{});
  EXPECT_EQ(s.result.status, MockStatus::PreciseOk);
  EXPECT_TRUE(s.context.executables.names.empty());
  EXPECT_FALSE(s.context.executables.fuzzy);
  EXPECT_TRUE(s.context.container.children.empty());
}

TEST(MockFrom, GlobalArgExpandsImage) {
  SnapshotStore priors = test_priors();
  VariableMap globals;
  globals.set_precise("NODE", "12");
  MockSetup setup = setup_with(&priors);
  setup.global_args = &globals;
  Step s = mock_from(instruction("FROM node:${NODE}"), fresh_context(), setup);
  EXPECT_EQ(s.context.image, "node:12");
  EXPECT_FALSE(s.context.executables.fuzzy);
}

// --- version checks ---

TEST(MockVersionCheck, RubyGemfileNewerThanImage) {
  SnapshotStore priors = test_priors();
  auto ws = make_workspace({"/Gemfile"}, {{"/Gemfile", "source 'https://rubygems.org'\nruby '2.7.1'\n"}});
  Step s = mock_from(instruction("FROM ruby:2.6"), fresh_context(ws), setup_with(&priors));
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  EXPECT_EQ(s.result.warnings[0].fault_type, FaultType::ImageVersionMismatch);
  EXPECT_EQ(s.result.warnings[0].severity, Severity::Warning);
}

TEST(MockVersionCheck, RubyMatch) {
  SnapshotStore priors = test_priors();
  auto ws = make_workspace({"/Gemfile"}, {{"/Gemfile", "ruby '2.7'\n"}});
  Step s = mock_from(instruction("FROM ruby:2.7"), fresh_context(ws), setup_with(&priors));
  EXPECT_EQ(s.result.status, MockStatus::PreciseOk);
}

TEST(MockVersionCheck, GoModNewerThanImage) {
  SnapshotStore priors = test_priors();
  auto ws = make_workspace({"/go.mod"}, {{"/go.mod", "module example.com/x\n\ngo 1.15\n"}});
  Step s = mock_from(instruction("FROM golang:1.13"), fresh_context(ws), setup_with(&priors));
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  EXPECT_EQ(s.result.warnings[0].fault_type, FaultType::ImageVersionMismatch);

  Step ok = mock_from(instruction("FROM golang:1.15"), fresh_context(ws), setup_with(&priors));
  EXPECT_EQ(ok.result.status, MockStatus::PreciseOk);
}

TEST(MockVersionCheck, UnknownImageVersionIsFuzzy) {
  auto ws = make_workspace({"/Gemfile"}, {{"/Gemfile", "ruby '2.7'\n"}});
  Context ctx = fresh_context(ws);
  ctx.image = "ruby:latest";
  MockResult r = mock_version_check(Toolchain::Ruby, ctx, 1);
  EXPECT_EQ(r.status, MockStatus::Fuzzy);
  EXPECT_TRUE(r.warnings.empty());
}

TEST(MockVersionCheck, GoBuildChecksCopiedManifest) {
  auto ws = make_workspace({"/src/go.mod"}, {{"/src/go.mod", "module m\ngo 1.16\n"}});
  Context ctx = precise_context();
  ctx.workspace = ws;
  ctx.image = "golang:1.15";
  ctx.vars.set_precise("GOLANG_VERSION", "1.15.15");
  ctx.executables.names.insert("go");
  ctx = mock_copy_add(instruction("COPY src /app/"), ctx, MockSetup{}).context;
  ShellSession session = ShellSession::for_context(ctx);
  session.cwd = "/app";
  MockSetup setup;
  MockResult r = run_argv({{"go", false}, {"build", false}, {"./...", false}}, ctx, session, setup, 7);
  ASSERT_EQ(r.status, MockStatus::Conflict);
  EXPECT_EQ(r.warnings[0].fault_type, FaultType::ImageVersionMismatch);
}

// --- COPY / ADD ---

class MockCopy : public ::testing::Test {
 protected:
  void SetUp() override {
    ws_ = make_workspace({"/Dockerfile", "/myapp/package.json", "/myapp/package-lock.json",
                          "/myapp/src/index.js", "/a", "/b", "/dist.tar.gz"});
    ctx_ = precise_context();
    ctx_.workspace = ws_;
    ctx_.workdir = "/app";
    put_node(ctx_.container, "/app", NodeKind::Directory, false);
  }
  Step copy(const std::string& text) { return mock_copy_add(instruction(text), ctx_, MockSetup{}); }

  std::shared_ptr<const Workspace> ws_;
  Context ctx_;
};

TEST_F(MockCopy, MissingSourceIsOuterFileNotFoundAndFixedFuzzy) {
  Step s = copy("COPY package.json /app/package.json");
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  ASSERT_EQ(s.result.warnings.size(), 1u);
  EXPECT_EQ(s.result.warnings[0].fault_type, FaultType::OuterFileNotFound);
  EXPECT_EQ(s.result.warnings[0].subject, "package.json");
  const FileNode* fixed = find_node(s.context.container, "/app/package.json");
  ASSERT_NE(fixed, nullptr);
  EXPECT_TRUE(fixed->fuzzy);
}

TEST_F(MockCopy, PrefixedSourceCopiesPrecisely) {
  Step s = copy("COPY myapp/package.json /app/");
  EXPECT_EQ(s.result.status, MockStatus::PreciseOk);
  StatResult st = stat(s.context.container, "/app/package.json");
  EXPECT_TRUE(st.precise_file());
}

TEST_F(MockCopy, SeveralSourcesNeedTrailingSlash) {
  Step s = copy("COPY a b /dst");
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  EXPECT_EQ(s.result.warnings[0].fault_type, FaultType::InstructionMisuse);
  Step ok = copy("COPY a b /dst/");
  EXPECT_EQ(ok.result.status, MockStatus::PreciseOk);
  EXPECT_TRUE(stat(ok.context.container, "/dst/a").precise_file());
  EXPECT_TRUE(stat(ok.context.container, "/dst/b").precise_file());
}

TEST_F(MockCopy, DirectoryContentsAreCopied) {
  Step s = copy("COPY myapp .");
  EXPECT_EQ(s.result.status, MockStatus::PreciseOk);
  EXPECT_TRUE(stat(s.context.container, "/app/package.json").precise_file());
  EXPECT_TRUE(stat(s.context.container, "/app/src/index.js").precise_file());
  EXPECT_TRUE(stat(s.context.container, "/app/myapp").absent_precise());
  EXPECT_EQ(find_node(s.context.container, "/app/src/index.js")->origin, "/myapp/src/index.js");
}

TEST_F(MockCopy, GlobSources) {
  Step s = copy("COPY myapp/*.json ./");
  EXPECT_EQ(s.result.status, MockStatus::PreciseOk);
  EXPECT_TRUE(stat(s.context.container, "/app/package.json").precise_file());
  EXPECT_TRUE(stat(s.context.container, "/app/package-lock.json").precise_file());
  Step none = copy("COPY *.xml ./");
  ASSERT_EQ(none.result.status, MockStatus::Conflict);
  EXPECT_EQ(none.result.warnings[0].fault_type, FaultType::OuterFileNotFound);
}

TEST_F(MockCopy, FromEarlierStageIsFuzzy) {
  std::vector<std::pair<std::string, Context>> stages = {{"build", precise_context()}};
  MockSetup setup;
  setup.stages = &stages;
  Step s = mock_copy_add(instruction("COPY --from=0 /out /app"), ctx_, setup);
  EXPECT_TRUE(s.result.warnings.empty());
  EXPECT_TRUE(testing::has_fuzzy(*find_node(s.context.container, "/app")));
  Step named = mock_copy_add(instruction("COPY --from=build /out/bin /usr/local/bin/"), ctx_, setup);
  EXPECT_TRUE(named.result.warnings.empty());
  Step bad = mock_copy_add(instruction("COPY --from=nosuch /out /app"), ctx_, setup);
  ASSERT_EQ(bad.result.status, MockStatus::Conflict);
  EXPECT_EQ(bad.result.warnings[0].fault_type, FaultType::InstructionMisuse);
}

TEST_F(MockCopy, AddUrlIsFuzzy) {
  Step s = copy("ADD https://example.com/tool.tar.gz /opt/");
  EXPECT_EQ(s.result.status, MockStatus::Fuzzy);
  EXPECT_TRUE(s.result.warnings.empty());
  EXPECT_TRUE(find_node(s.context.container, "/opt/tool.tar.gz")->fuzzy);
}

TEST_F(MockCopy, AddArchiveUnpacksFuzzy) {
  Step s = copy("ADD dist.tar.gz /srv");
  EXPECT_TRUE(s.result.warnings.empty());
  const FileNode* n = find_node(s.context.container, "/srv");
  ASSERT_NE(n, nullptr);
  EXPECT_TRUE(n->is_dir());
  EXPECT_TRUE(n->fuzzy);
}

TEST_F(MockCopy, CopyUrlIsMisuse) {
  Step s = copy("COPY https://example.com/x /x");
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  EXPECT_EQ(s.result.warnings[0].fault_type, FaultType::InstructionMisuse);
}

TEST_F(MockCopy, ChmodFlagSetsMode) {
  Step s = copy("COPY --chmod=755 a /usr/local/bin/a");
  EXPECT_EQ(find_node(s.context.container, "/usr/local/bin/a")->mode, 0755);
  EXPECT_TRUE(s.context.executables.names.count("a"));
}

TEST_F(MockCopy, VariablesInArguments) {
  ctx_.vars.set_precise("SRC", "myapp");
  Step s = copy("COPY ${SRC}/package.json /app/");
  EXPECT_EQ(s.result.status, MockStatus::PreciseOk);
  ctx_.vars.set_fuzzy("SRC");
  Step f = copy("COPY $SRC/package.json /app/");
  EXPECT_EQ(f.result.status, MockStatus::Fuzzy);
}

// --- WORKDIR ---

TEST(MockWorkdir, RegularFileIsInstructionMisuse) {
  Context ctx = precise_context();
  put_node(ctx.container, "/database", NodeKind::Regular, false);
  Step s = mock_workdir(instruction("WORKDIR /database"), ctx, MockSetup{});
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  EXPECT_EQ(s.result.warnings[0].fault_type, FaultType::InstructionMisuse);
}

TEST(MockWorkdir, CreatesMissingDirectory) {
  Step s = mock_workdir(instruction("WORKDIR /app"), precise_context(), MockSetup{});
  EXPECT_EQ(s.result.status, MockStatus::PreciseOk);
  EXPECT_EQ(s.context.workdir, "/app");
  EXPECT_TRUE(stat(s.context.container, "/app").precise_dir());
}

TEST(MockWorkdir, RelativeJoinsCurrent) {
  Context ctx = precise_context();
  ctx.workdir = "/app";
  Step s = mock_workdir(instruction("WORKDIR src"), ctx, MockSetup{});
  EXPECT_EQ(s.context.workdir, "/app/src");
}

TEST(MockWorkdir, FuzzyPathIsFuzzy) {
  Context ctx = precise_context();
  ctx.vars.set_fuzzy("DIR");
  Step s = mock_workdir(instruction("WORKDIR /srv/$DIR"), ctx, MockSetup{});
  EXPECT_EQ(s.result.status, MockStatus::Fuzzy);
  EXPECT_TRUE(s.context.workdir_fuzzy);
}

TEST(MockWorkdir, FuzzyContainerIsPresumedAbsent) {
  Context ctx = precise_context();
  fuzz_files(ctx);
  Step s = mock_workdir(instruction("WORKDIR /app"), ctx, MockSetup{});
  EXPECT_EQ(s.result.status, MockStatus::Fuzzy);
  EXPECT_TRUE(stat(s.context.container, "/app").precise_dir());
  MockSetup off;
  off.options.assumption = false;
  Step a = mock_workdir(instruction("WORKDIR /app"), ctx, off);
  EXPECT_TRUE(find_node(a.context.container, "/app")->fuzzy);
}

// --- ENV / ARG ---

TEST(MockEnv, PreciseValue) {
  Step s = mock_env(instruction("ENV PORT=80"), precise_context(), MockSetup{});
  VarLookup v = s.context.vars.lookup("PORT");
  EXPECT_EQ(v.state, VarState::Precise);
  EXPECT_EQ(v.value, "80");
}

TEST(MockEnv, ArgWithoutDefaultIsFuzzy) {
  Step s = mock_env(instruction("ARG VER"), precise_context(), MockSetup{});
  EXPECT_EQ(s.context.vars.lookup("VER").state, VarState::Fuzzy);
  Step d = mock_env(instruction("ARG VER=1.2"), precise_context(), MockSetup{});
  EXPECT_EQ(d.context.vars.lookup("VER").state, VarState::Precise);
}

TEST(MockEnv, FuzzinessPropagates) {
  Context ctx = precise_context();
  ctx.vars.set_fuzzy("B");
  Step s = mock_env(instruction("ENV A=$B"), ctx, MockSetup{});
  EXPECT_EQ(s.context.vars.lookup("A").state, VarState::Fuzzy);
}

TEST(MockEnv, ValuesExpandBeforeAssignment) {
  Context ctx = precise_context();
  ctx.vars.set_precise("A", "old");
  Step s = mock_env(instruction("ENV A=new B=$A"), ctx, MockSetup{});
  EXPECT_EQ(s.context.vars.lookup("B").value, "old");
}

TEST(MockEnv, EnvWinsOverArg) {
  Context ctx = precise_context();
  ctx = mock_env(instruction("ENV V=env"), ctx, MockSetup{}).context;
  ctx = mock_env(instruction("ARG V=arg"), ctx, MockSetup{}).context;
  EXPECT_EQ(ctx.vars.lookup("V").value, "env");
}

TEST(MockEnv, PathChangeTracksCreatedCommands) {
  Context ctx = precise_context();
  put_node(ctx.container, "/opt/tool/bin/tool", NodeKind::Regular, false);
  ctx = mock_env(instruction("ENV PATH=/opt/tool/bin:$PATH"), ctx, MockSetup{}).context;
  EXPECT_TRUE(ctx.executables.names.count("tool"));
  EXPECT_FALSE(ctx.executables.fuzzy);
}

// --- RUN and dispatch ---

TEST(MockRun, NpmInstallWithManifest) {
  Context ctx = precise_context();
  ctx.executables.names.insert("npm");
  ctx.workdir = "/app";
  put_node(ctx.container, "/app/package.json", NodeKind::Regular, false);
  Step s = testing::run_script_text("npm install", ctx);
  EXPECT_EQ(s.result.status, MockStatus::PreciseOk);
  const FileNode* nm = find_node(s.context.container, "/app/node_modules");
  ASSERT_NE(nm, nullptr);
  EXPECT_TRUE(nm->fuzzy);
  EXPECT_TRUE(nm->is_dir());
}

TEST(MockRun, NpmInstallWithoutManifest) {
  Context ctx = precise_context();
  ctx.executables.names.insert("npm");
  ctx.workdir = "/app";
  put_node(ctx.container, "/app", NodeKind::Directory, false);
  Step s = testing::run_script_text("npm install", ctx);
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  EXPECT_EQ(s.result.warnings[0].fault_type, FaultType::InnerFileNotFound);
}

TEST(MockRun, MissingCommandOnPythonImage) {
  SnapshotStore priors = test_priors();
  Context ctx = mock_from(instruction("FROM python:3.8"), fresh_context(), setup_with(&priors)).context;
  Step s = testing::run_script_text("java -version", ctx);
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  EXPECT_EQ(s.result.warnings[0].fault_type, FaultType::CommandNotFound);
  EXPECT_EQ(s.result.warnings[0].subject, "java");
}

TEST(MockRun, AsyncFuzzesEverything) {
  Step s = testing::run_script_text("true &", precise_context());
  EXPECT_EQ(s.result.status, MockStatus::Fuzzy);
  EXPECT_TRUE(s.context.container_fuzzy);
  EXPECT_TRUE(s.context.executables.fuzzy);
}

TEST(MockRun, SyntaxErrorInScript) {
  Step s = testing::run_script_text("if then fi (", precise_context());
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  EXPECT_EQ(s.result.warnings[0].fault_type, FaultType::SyntaxMistake);
}

TEST(MockRun, NonPosixShellFuzzes) {
  Context ctx = precise_context();
  ctx = mock_instruction(instruction("SHELL [\"powershell\", \"-Command\"]"), ctx, MockSetup{}).context;
  Step s = testing::run_script_text("Get-ChildItem", ctx);
  EXPECT_EQ(s.result.status, MockStatus::Fuzzy);
}

TEST(MockRun, ExecFormRunsSingleCommand) {
  Context ctx = precise_context();
  Step s = mock_run(instruction("RUN [\"mkdir\", \"/data\"]"), ctx, MockSetup{});
  EXPECT_EQ(s.result.status, MockStatus::PreciseOk);
  EXPECT_TRUE(stat(s.context.container, "/data").precise_dir());
}

TEST(MockRun, ExecFormShellScript) {
  Context ctx = precise_context();
  ctx.executables.names.insert("sh");
  Step s = mock_run(instruction("RUN [\"sh\", \"-c\", \"mkdir /a && rm /a/x\"]"), ctx, MockSetup{});
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  EXPECT_EQ(s.result.warnings[0].fault_type, FaultType::InnerFileNotFound);
}

TEST(Dispatch, CdChangesShellDirectory) {
  Context ctx = precise_context();
  put_node(ctx.container, "/app", NodeKind::Directory, false);
  ShellSession session = ShellSession::for_context(ctx);
  auto prog = shell::parse_shell("cd /app");
  const auto& cmd = std::get<shell::SimpleCommand>(prog->items[0].pipelines[0].commands[0]);
  MockResult r = dispatch_command(cmd, ctx, session, MockSetup{}, 1);
  EXPECT_EQ(r.status, MockStatus::PreciseOk);
  EXPECT_EQ(session.cwd, "/app");
}

TEST(Dispatch, UnknownCommandWithPreciseExecutables) {
  Step s = run({"unknowncmd", "x"}, precise_context());
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  EXPECT_EQ(s.result.warnings[0].fault_type, FaultType::CommandNotFound);
  EXPECT_TRUE(s.context.executables.names.count("unknowncmd"));
}

TEST(Dispatch, UnmockedCommandFuzzesEverything) {
  Context ctx = precise_context();
  ctx.executables.fuzzy = true;
  Step s = run({"somecmd"}, ctx);
  EXPECT_EQ(s.result.status, MockStatus::Fuzzy);
  EXPECT_TRUE(s.result.warnings.empty());
  EXPECT_TRUE(s.context.container_fuzzy);
}

TEST(Dispatch, RedirectIntoMissingDirectory) {
  Step s = testing::run_script_text("echo hi > /nowhere/file", precise_context());
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  EXPECT_EQ(s.result.warnings[0].fault_type, FaultType::InnerFileNotFound);
  Step ok = testing::run_script_text("echo hi > /file && ls /file", precise_context());
  EXPECT_EQ(ok.result.status, MockStatus::PreciseOk);
}

TEST(Dispatch, GlobExpandsAgainstContainer) {
  Context ctx = precise_context();
  testing::add_paths(ctx.container, {"/src/a.txt", "/src/b.txt", "/dst/"});
  Step s = testing::run_script_text("cp /src/*.txt /dst/", ctx);
  EXPECT_EQ(s.result.status, MockStatus::PreciseOk);
  EXPECT_TRUE(stat(s.context.container, "/dst/a.txt").precise_file());
  EXPECT_TRUE(stat(s.context.container, "/dst/b.txt").precise_file());
}

// --- shell command mocks ---

TEST(MockCp, DirectoryWithoutRecursiveIsMisuseButCopied) {
  Context ctx = precise_context();
  testing::add_paths(ctx.container, {"/dir/f"});
  Step s = run({"cp", "/dir", "/dst"}, ctx);
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  EXPECT_EQ(s.result.warnings[0].fault_type, FaultType::CommandMisuse);
  const FileNode* dst = find_node(s.context.container, "/dst");
  ASSERT_NE(dst, nullptr);
  EXPECT_TRUE(dst->is_dir());
}

TEST(MockCp, MissingSourceIsInnerFileNotFound) {
  Step s = run({"cp", "/x", "/y"}, precise_context());
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  EXPECT_EQ(s.result.warnings[0].fault_type, FaultType::InnerFileNotFound);
}

TEST(MockCp, RegularCopy) {
  Context ctx = precise_context();
  testing::add_paths(ctx.container, {"/a"});
  Step s = run({"cp", "/a", "/b"}, ctx);
  EXPECT_EQ(s.result.status, MockStatus::PreciseOk);
  EXPECT_TRUE(stat(s.context.container, "/b").precise_file());
}

TEST(MockCp, FuzzySourceGivesFuzzyDestination) {
  Context ctx = precise_context();
  Step s = run_command({"cp", "/a", "/b"}, ctx, MockSetup{});
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  fuzz_files(ctx);
  ShellSession session = ShellSession::for_context(ctx);
  MockResult r = run_argv({{"cp", false}, {"/x", true}, {"/b", false}}, ctx, session, MockSetup{}, 1);
  EXPECT_EQ(r.status, MockStatus::Fuzzy);
  EXPECT_TRUE(find_node(ctx.container, "/b")->fuzzy);
}

TEST(MockApt, InstallWithoutYes) {
  Context ctx = precise_context();
  ctx.executables.names.insert("apt-get");
  Step s = run({"apt-get", "install", "curl"}, ctx);
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  EXPECT_EQ(s.result.warnings[0].fault_type, FaultType::RequireManualInput);
}

TEST(MockApt, InstallWithYes) {
  Context ctx = precise_context();
  ctx.executables.names.insert("apt-get");
  for (auto flag : {"-y", "--yes", "-qq", "--assume-yes"}) {
    Step s = run({"apt-get", "install", flag, "curl"}, ctx);
    EXPECT_EQ(s.result.status, MockStatus::Fuzzy) << flag;
    EXPECT_TRUE(s.context.executables.fuzzy) << flag;
  }
}

TEST(MockApt, UpdateLeavesExecutables) {
  Context ctx = precise_context();
  ctx.executables.names.insert("apt-get");
  Step s = run({"apt-get", "update"}, ctx);
  EXPECT_EQ(s.result.status, MockStatus::Fuzzy);
  EXPECT_FALSE(s.context.executables.fuzzy);
}

TEST(MockGo, GetNeedsGit) {
  Context ctx = precise_context();
  ctx.executables.names.insert("go");
  Step s = run({"go", "get", "github.com/x/y"}, ctx);
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  EXPECT_EQ(s.result.warnings[0].fault_type, FaultType::CommandNotFound);
  EXPECT_EQ(s.result.warnings[0].subject, "git");
  ctx.executables.names.insert("git");
  Step ok = run({"go", "get", "github.com/x/y"}, ctx);
  EXPECT_EQ(ok.result.status, MockStatus::Fuzzy);
}

TEST(MockChmod, ModesAndErrors) {
  Context ctx = precise_context();
  testing::add_paths(ctx.container, {"/bin/tool"});
  Step s = run({"chmod", "+x", "/bin/tool"}, ctx);
  EXPECT_EQ(s.result.status, MockStatus::PreciseOk);
  Step o = run({"chmod", "0644", "/bin/tool"}, ctx);
  EXPECT_EQ(find_node(o.context.container, "/bin/tool")->mode, 0644);
  Step u = run({"chmod", "u=rwx,go=rx", "/bin/tool"}, o.context);
  EXPECT_EQ(find_node(u.context.container, "/bin/tool")->mode, 0755);
  Step missing = run({"chmod", "755", "/nope"}, ctx);
  ASSERT_EQ(missing.result.status, MockStatus::Conflict);
  EXPECT_EQ(missing.result.warnings[0].fault_type, FaultType::InnerFileNotFound);
  Step bad = run({"chmod", "99", "/bin/tool"}, ctx);
  ASSERT_EQ(bad.result.status, MockStatus::Conflict);
  EXPECT_EQ(bad.result.warnings[0].fault_type, FaultType::CommandMisuse);
  Step unknown = run({"chmod", "--preserve-root", "755", "/bin/tool"}, ctx);
  EXPECT_EQ(unknown.result.status, MockStatus::Fuzzy);
}

TEST(MockRm, Cases) {
  Context ctx = precise_context();
  testing::add_paths(ctx.container, {"/d/f", "/g"});
  EXPECT_EQ(run({"rm", "/g"}, ctx).result.status, MockStatus::PreciseOk);
  EXPECT_EQ(run({"rm", "-f", "/missing"}, ctx).result.status, MockStatus::PreciseOk);
  Step dir = run({"rm", "/d"}, ctx);
  ASSERT_EQ(dir.result.status, MockStatus::Conflict);
  EXPECT_EQ(dir.result.warnings[0].fault_type, FaultType::CommandMisuse);
  Step gone = run({"rm", "/missing"}, ctx);
  EXPECT_EQ(gone.result.warnings[0].fault_type, FaultType::InnerFileNotFound);
  Step rec = run({"rm", "-rf", "/d"}, ctx);
  EXPECT_TRUE(stat(rec.context.container, "/d").absent_precise());
}

TEST(MockMkdir, Cases) {
  Context ctx = precise_context();
  Step nested = run({"mkdir", "/a/b"}, ctx);
  ASSERT_EQ(nested.result.status, MockStatus::Conflict);
  EXPECT_EQ(nested.result.warnings[0].fault_type, FaultType::InnerFileNotFound);
  Step p = run({"mkdir", "-p", "/a/b"}, ctx);
  EXPECT_EQ(p.result.status, MockStatus::PreciseOk);
  Step again = run({"mkdir", "/a"}, p.context);
  ASSERT_EQ(again.result.status, MockStatus::Conflict);
  EXPECT_EQ(again.result.warnings[0].fault_type, FaultType::CommandMisuse);
  EXPECT_EQ(run({"mkdir", "-p", "/a"}, p.context).result.status, MockStatus::PreciseOk);
}

TEST(MockMv, DirectoryNotEmpty) {
  Context ctx = precise_context();
  testing::add_paths(ctx.container, {"/src/x", "/dst/src/y"});
  Step s = run({"mv", "/src", "/dst/"}, ctx);
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  EXPECT_EQ(s.result.warnings[0].fault_type, FaultType::CommandMisuse);
}

TEST(MockExport, BadName) {
  Step s = run({"export", "1X=2"}, precise_context());
  ASSERT_EQ(s.result.status, MockStatus::Conflict);
  EXPECT_EQ(s.result.warnings[0].fault_type, FaultType::CommandMisuse);
}

// --- script semantics ---

TEST(Interpreter, HandledFailureIsNotReported) {
  EXPECT_TRUE(testing::run_script_text("cp /missing /x || true", precise_context()).result.warnings.empty());
  EXPECT_TRUE(testing::run_script_text("cp /missing /x; echo done", precise_context()).result.warnings.empty());
  EXPECT_TRUE(testing::run_script_text("ls /missing | cat", precise_context()).result.warnings.empty());
  EXPECT_TRUE(testing::run_script_text("! ls /missing", precise_context()).result.warnings.empty());
}

TEST(Interpreter, PropagatedFailureIsReported) {
  EXPECT_FALSE(testing::run_script_text("echo a; cp /missing /x", precise_context()).result.warnings.empty());
  EXPECT_FALSE(testing::run_script_text("cp /missing /x && echo ok", precise_context()).result.warnings.empty());
  EXPECT_FALSE(testing::run_script_text("set -e; cp /missing /x; echo", precise_context()).result.warnings.empty());
  EXPECT_FALSE(testing::run_script_text("(cd /nope && ls)", precise_context()).result.warnings.empty());
}

TEST(Interpreter, SequenceUpdatesTree) {
  Step s = testing::run_script_text("mkdir /a && cd /a && touch f && cp f g && mv g h", precise_context());
  EXPECT_EQ(s.result.status, MockStatus::PreciseOk);
  EXPECT_TRUE(stat(s.context.container, "/a/f").precise_file());
  EXPECT_TRUE(stat(s.context.container, "/a/h").precise_file());
  EXPECT_TRUE(stat(s.context.container, "/a/g").absent_precise());
}

TEST(Interpreter, FuzzyExitMakesBranchesUncertain) {
  Step s = testing::run_script_text("test -d /x || mkdir /a", precise_context());
  EXPECT_EQ(s.result.status, MockStatus::Fuzzy);
  const FileNode* a = find_node(s.context.container, "/a");
  ASSERT_NE(a, nullptr);
  EXPECT_TRUE(a->fuzzy);
}

TEST(Interpreter, ShellVariablesAreExpanded) {
  Step s = testing::run_script_text("D=/opt/app; mkdir -p $D/bin && touch \"$D/bin/run\"", precise_context());
  EXPECT_EQ(s.result.status, MockStatus::PreciseOk);
  EXPECT_TRUE(stat(s.context.container, "/opt/app/bin/run").precise_file());
}

TEST(Interpreter, AssumptionOffHaltsChain) {
  Context ctx = precise_context();
  fuzz_files(ctx);
  AnalysisOptions off;
  off.assumption = false;
  Step on = testing::run_script_text("mkdir /w && cd /w && cp nope x", ctx);
  EXPECT_FALSE(on.result.warnings.empty());
  Step halted = testing::run_script_text("mkdir /w && cd /w && cp nope x", ctx, off);
  EXPECT_TRUE(halted.result.warnings.empty());
  EXPECT_EQ(halted.result.status, MockStatus::Fuzzy);
}

TEST(Registry, ExtensibleCopy) {
  MockRegistry reg = MockRegistry::with_builtin_mocks();
  reg.add(MockSpec{"hello", Integrity::Complete, {}, {}},
          [](const CommandCall&, Context& ctx, ShellSession&) {
            put_node(ctx.container, "/hello", NodeKind::Regular, false);
            return MockResult::ok();
          });
  MockSetup setup;
  setup.registry = &reg;
  Context ctx = precise_context();
  ctx.executables.names.insert("hello");
  Step s = run_command({"hello"}, ctx, setup);
  EXPECT_EQ(s.result.status, MockStatus::PreciseOk);
  EXPECT_TRUE(stat(s.context.container, "/hello").precise_file());
  EXPECT_EQ(MockRegistry::builtin().find("hello"), nullptr);
}

}  // namespace
}  // namespace dockmock
