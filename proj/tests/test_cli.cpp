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

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <nlohmann/json.hpp>

#include "dockmock/cli.hpp"
#include "dockmock/diagnostics.hpp"
#include "test_util.hpp"

namespace dockmock {
namespace {

namespace fs = std::filesystem;

struct CliRun {
  int code = 0;
  std::string out;
  std::string err;
};

CliRun cli(std::vector<std::string> args, RuntimeInvoker* runtime = nullptr) {
  args.insert(args.begin(), "dockmock");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  int code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err, runtime);
  return {code, out.str(), err.str()};
}

std::string data(const std::string& rel) { return (testing::data_dir() / rel).string(); }
std::string priors() { return data("priors.json"); }

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

class TempDir {
 public:
  TempDir() {
    path_ = fs::temp_directory_path() / ("dockmock-cli-" + std::to_string(::getpid()) + "-" +
                                         std::to_string(counter_++));
    fs::remove_all(path_);
    fs::create_directories(path_);
  }
  ~TempDir() { fs::remove_all(path_); }
  fs::path path() const { return path_; }
  void write(const std::string& rel, const std::string& text) const {
    fs::create_directories((path_ / rel).parent_path());
    std::ofstream(path_ / rel) << text;
  }

 private:
  static inline int counter_ = 0;
  fs::path path_;
};

TEST(Cli, MyappPrefixText) {
  CliRun r = cli({"check", data("myapp-prefix/broken/Dockerfile"), "--priors", priors()});
  EXPECT_EQ(r.code, 1);
  auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 2u);
  std::regex shape(R"(^.+:\d+: (ERROR|WARNING) \[[a-z-]+\] .+$)");
  for (const auto& l : lines) EXPECT_TRUE(std::regex_match(l, shape)) << l;
  EXPECT_NE(lines[0].find("Dockerfile:4: ERROR [outer-file-not-found]"), std::string::npos);
  EXPECT_NE(lines[1].find("Dockerfile:5: ERROR [outer-file-not-found]"), std::string::npos);
}

TEST(Cli, FixedProjectIsSilent) {
  CliRun r = cli({"check", data("myapp-prefix/fixed/Dockerfile"), "--priors", priors()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
}

TEST(Cli, MissingDockerfile) {
  CliRun r = cli({"check", "/nonexistent/Dockerfile"});
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
  CliRun none = cli({"check"});
  EXPECT_EQ(none.code, 2);
  EXPECT_NE(none.err.find("Usage"), std::string::npos);
}

TEST(Cli, UnknownSubcommandAndHelp) {
  EXPECT_EQ(cli({"frobnicate"}).code, 2);
  EXPECT_EQ(cli({"--help"}).code, 0);
  EXPECT_EQ(cli({"check", data("myapp-prefix/fixed/Dockerfile"), "--format", "xml"}).code, 2);
}

TEST(Cli, JsonRoundTrip) {
  CliRun r = cli({"check", data("myapp-prefix/broken/Dockerfile"), "--priors", priors(), "--format", "json"});
  EXPECT_EQ(r.code, 1);
  ASSERT_FALSE(r.out.empty());
  EXPECT_EQ(r.out.back(), '\n');
  auto doc = nlohmann::ordered_json::parse(r.out);
  ASSERT_TRUE(doc.is_array());
  ASSERT_EQ(doc.size(), 2u);
  std::vector<std::string> keys;
  for (const auto& [k, v] : doc[0].items()) keys.push_back(k);
  EXPECT_EQ(keys, (std::vector<std::string>{"file", "line", "severity", "code", "message", "subject"}));
  EXPECT_EQ(doc[0]["subject"], "package.json");
  std::vector<Diagnostic> diags = parse_json_diagnostics(r.out);
  EXPECT_EQ(format_json(diags), r.out);
}

TEST(Cli, FailOnThreshold) {
  TempDir dir;
  dir.write("Dockerfile", "FROM ubuntu:20.04\nRUN apt-get update && apt-get install curl\n");
  std::string df = (dir.path() / "Dockerfile").string();
  CliRun warn = cli({"check", df, "--priors", priors()});
  EXPECT_EQ(warn.code, 1);
  EXPECT_NE(warn.out.find("WARNING [require-manual-input]"), std::string::npos);
  EXPECT_EQ(cli({"check", df, "--priors", priors(), "--fail-on", "error"}).code, 0);
  EXPECT_EQ(cli({"check", data("myapp-prefix/broken/Dockerfile"), "--priors", priors(), "--fail-on", "never"}).code, 0);
}

TEST(Cli, ConfigDisablesAndOverrides) {
  TempDir dir;
  dir.write("Dockerfile", "FROM ubuntu:20.04\nRUN apt-get install curl\nCOPY nothing /x\n");
  dir.write(".dockmock.toml", "# project settings\ndisable = [\"outer-file-not-found\"]\n"
                              "severity.require-manual-input = \"error\"\n");
  CliRun r = cli({"check", (dir.path() / "Dockerfile").string(), "--priors", priors()});
  EXPECT_EQ(r.code, 1);
  EXPECT_EQ(r.out.find("outer-file-not-found"), std::string::npos);
  EXPECT_NE(r.out.find("ERROR [require-manual-input]"), std::string::npos);
  dir.write(".dockmock.toml", "disable = [\"no-such-code\"]\n");
  EXPECT_EQ(cli({"check", (dir.path() / "Dockerfile").string(), "--priors", priors()}).code, 2);
}

TEST(Cli, WorkspaceOverride) {
  TempDir dir;
  dir.write("docker/Dockerfile", "FROM node:12\nCOPY package.json /app/\n");
  dir.write("package.json", "{}");
  std::string df = (dir.path() / "docker/Dockerfile").string();
  EXPECT_EQ(cli({"check", df, "--priors", priors()}).code, 1);
  EXPECT_EQ(cli({"check", df, "--priors", priors(), "--workspace", dir.path().string()}).code, 0);
}

TEST(Cli, DockerignoreApplies) {
  TempDir dir;
  dir.write("Dockerfile", "FROM node:12\nCOPY secret.env /app/\n");
  dir.write("secret.env", "X=1");
  dir.write(".dockerignore", "*.env\n");
  CliRun r = cli({"check", (dir.path() / "Dockerfile").string(), "--priors", priors()});
  EXPECT_EQ(r.code, 1);
  EXPECT_NE(r.out.find("outer-file-not-found"), std::string::npos);
}

TEST(Cli, SeveralDockerfiles) {
  CliRun r = cli({"check", data("myapp-prefix/broken/Dockerfile"), data("workdir-on-file/broken/Dockerfile"),
                  data("myapp-prefix/fixed/Dockerfile"), "--priors", priors()});
  EXPECT_EQ(r.code, 1);
  auto lines = lines_of(r.out);
  ASSERT_EQ(lines.size(), 3u);
  EXPECT_NE(lines[2].find("workdir-on-file/broken/Dockerfile:3"), std::string::npos);
}

TEST(Cli, AblationFlags) {
  TempDir dir;
  dir.write("Dockerfile", "FROM python:3.8\nRUN java -version\n");
  std::string df = (dir.path() / "Dockerfile").string();
  EXPECT_EQ(cli({"check", df, "--priors", priors()}).code, 1);
  EXPECT_EQ(cli({"check", df, "--priors", priors(), "--no-priors"}).code, 0);
}

TEST(Cli, CaptureWritesStore) {
  TempDir dir;
  std::string store = (dir.path() / "priors.json").string();
  testing::HostRuntime runtime;
  CliRun r = cli({"capture", "node:12", "--priors", store}, &runtime);
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("node:12"), std::string::npos);
  EXPECT_EQ(SnapshotStore::load(store).size(), 1u);
  EXPECT_EQ(cli({"capture", "node:12", "--priors", store}, &runtime).code, 0);
  EXPECT_EQ(SnapshotStore::load(store).size(), 1u);
}

TEST(Cli, CaptureWithoutRuntime) {
  TempDir dir;
  std::string store = (dir.path() / "priors.json").string();
  testing::HostRuntime runtime;
  runtime.present = false;
  CliRun r = cli({"capture", "node:12", "--priors", store}, &runtime);
  EXPECT_EQ(r.code, 2);
  EXPECT_FALSE(r.err.empty());
  EXPECT_FALSE(fs::exists(store));
}

TEST(DiagnosticsConfig, Parse) {
  DiagnosticConfig c = parse_config("disable = [\"permission-denied\", \"image-not-found\"]\n"
                                    "severity.image-version-mismatch = \"error\"  # stricter\n");
  EXPECT_EQ(c.disabled, (std::set<FaultType>{FaultType::PermissionDenied, FaultType::ImageNotFound}));
  EXPECT_EQ(c.severity.at(FaultType::ImageVersionMismatch), Severity::Error);
  EXPECT_THROW(parse_config("disable = permission-denied\n"), ManifestFault);
  EXPECT_THROW(parse_config("severity.outer-file-not-found = \"fatal\"\n"), ManifestFault);
  EXPECT_THROW(parse_config("colour = \"red\"\n"), ManifestFault);
}

TEST(Diagnostics, SeverityDefaults) {
  EXPECT_EQ(default_severity(FaultType::ImageVersionMismatch), Severity::Warning);
  EXPECT_EQ(default_severity(FaultType::RequireManualInput), Severity::Warning);
  EXPECT_EQ(default_severity(FaultType::OuterFileNotFound), Severity::Error);
  for (FaultType t : kAllFaultTypes) EXPECT_EQ(fault_from_code(fault_code(t)), t);
}

}  // namespace
}  // namespace dockmock
