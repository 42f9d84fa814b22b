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

#include "dockmock/cli.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <future>
#include <sstream>

#include "dockmock/corpus.hpp"
#include "dockmock/diagnostics.hpp"
#include "dockmock/engine.hpp"
#include "dockmock/log.hpp"

namespace dockmock {

namespace fs = std::filesystem;

namespace {

struct CheckArgs {
  std::vector<std::string> dockerfiles;
  std::string workspace;
  std::string priors;
  std::string config;
  std::string format = "text";
  std::string fail_on = "warning";
  bool no_assumption = false;
  bool no_priors = false;
};

struct BenchArgs {
  std::string manifest;
  std::string format = "text";
  bool no_assumption = false;
  bool no_priors = false;
};

struct CaptureArgs {
  std::string image;
  std::string priors = kDefaultPriorsPath;
};

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

std::string read_file(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw IoFault("cannot read " + p.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::optional<SnapshotStore> load_priors(const std::string& flag) {
  if (!flag.empty()) return SnapshotStore::load(flag);
  if (fs::exists(kDefaultPriorsPath)) return SnapshotStore::load(kDefaultPriorsPath);
  return std::nullopt;
}

FailOn parse_fail_on(const std::string& s) {
  if (s == "error") return FailOn::Error;
  if (s == "never") return FailOn::Never;
  return FailOn::Warning;
}

int cmd_check(const CheckArgs& a, std::ostream& out) {
  for (const auto& f : a.dockerfiles) {
    if (!fs::is_regular_file(f)) throw UsageError("no such Dockerfile: " + f);
  }
  std::optional<SnapshotStore> store;
  if (!a.no_priors) store = load_priors(a.priors);
  AnalysisOptions options;
  options.assumption = !a.no_assumption;
  options.use_prior = !a.no_priors;

  auto run_one = [&](const std::string& file) {
    fs::path ws_dir = a.workspace.empty() ? fs::path(file).parent_path() : fs::path(a.workspace);
    if (ws_dir.empty()) ws_dir = ".";
    if (!fs::is_directory(ws_dir)) throw IoFault("workspace is not a directory: " + ws_dir.string());
    DiagnosticConfig config;
    fs::path cfg = a.config.empty() ? ws_dir / kConfigFileName : fs::path(a.config);
    if (!a.config.empty() || fs::exists(cfg)) config = parse_config(read_file(cfg));
    auto workspace = std::make_shared<const Workspace>(scan_workspace(ws_dir));
    AnalysisReport report = analyze_text(read_file(file), workspace, store ? &*store : nullptr, options);
    return to_diagnostics(report.warnings, file, config);
  };

  std::vector<std::future<std::vector<Diagnostic>>> pending;
  for (const auto& f : a.dockerfiles) pending.push_back(std::async(std::launch::async, run_one, f));
  std::vector<Diagnostic> all;
  for (auto& p : pending) {
    auto diags = p.get();
    all.insert(all.end(), diags.begin(), diags.end());
  }
  out << (a.format == "json" ? format_json(all) : format_text(all));
  return fails(all, parse_fail_on(a.fail_on)) ? 1 : 0;
}

int cmd_capture(const CaptureArgs& a, std::ostream& out, RuntimeInvoker* runtime) {
  ProcessRuntime docker;
  RuntimeInvoker& rt = runtime ? *runtime : docker;
  ImageSnapshot snap = capture_into_store(a.image, rt, a.priors);
  out << snap.image_ref << ": " << snap.env.size() << " environment variables, "
      << snap.executables.size() << " executables; saved to " << a.priors << "\n";
  return 0;
}

int cmd_bench(const BenchArgs& a, std::ostream& out) {
  AnalysisOptions options;
  options.assumption = !a.no_assumption;
  options.use_prior = !a.no_priors;
  Metrics m = evaluate(fs::path(a.manifest), options);
  out << (a.format == "json" ? metrics_json(m) : metrics_text(m));
  return 0;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err,
            RuntimeInvoker* runtime) {
  log::configure_from_env();
  CLI::App app{"Detects Dockerfile faults before building"};
  app.name("dockmock");
  app.require_subcommand(1);

  CheckArgs check;
  auto* c = app.add_subcommand("check", "Analyze Dockerfiles against their workspace");
  c->add_option("dockerfiles", check.dockerfiles, "Dockerfile paths")->required();
  c->add_option("--workspace", check.workspace, "Build context directory (default: the Dockerfile's)");
  c->add_option("--priors", check.priors, "Image snapshot store (default: ./dockmock-priors.json)");
  c->add_option("--config", check.config, "Settings file (default: <workspace>/.dockmock.toml)");
  c->add_option("--format", check.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  c->add_option("--fail-on", check.fail_on, "Exit 1 when a finding reaches this level")
      ->check(CLI::IsMember({"error", "warning", "never"}));
  c->add_flag("--no-assumption", check.no_assumption, "Stop a branch when fuzzy context is consumed");
  c->add_flag("--no-priors", check.no_priors, "Ignore image snapshots");

  CaptureArgs capture;
  auto* cap = app.add_subcommand("capture", "Snapshot a base image into the store");
  cap->add_option("image", capture.image, "Image reference")->required();
  cap->add_option("--priors", capture.priors, "Snapshot store to update");

  BenchArgs bench;
  auto* b = app.add_subcommand("bench", "Evaluate on a labeled corpus");
  b->add_option("manifest", bench.manifest, "Corpus manifest (JSON)")->required();
  b->add_option("--format", bench.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  b->add_flag("--no-assumption", bench.no_assumption, "Stop a branch when fuzzy context is consumed");
  b->add_flag("--no-priors", bench.no_priors, "Ignore image snapshots");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e, out, err);
    auto selected = app.get_subcommands();
    err << "dockmock: " << e.what() << "\n" << (selected.empty() ? app.help() : selected.front()->help());
    return 2;
  }
  try {
    if (c->parsed()) return cmd_check(check, out);
    if (cap->parsed()) return cmd_capture(capture, out, runtime);
    return cmd_bench(bench, out);
  } catch (const UsageError& e) {
    err << "dockmock: " << e.what() << "\n" << app.help();
  } catch (const std::exception& e) {
    err << "dockmock: " << e.what() << "\n";
  }
  return 2;
}

}  // namespace dockmock
