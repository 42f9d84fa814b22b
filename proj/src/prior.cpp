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

#include "dockmock/prior.hpp"

#include <fcntl.h>
#include <poll.h>
#include <spawn.h>
#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cstring>
#include <ctime>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>

#include "dockmock/context.hpp"
#include "dockmock/faults.hpp"
#include "dockmock/log.hpp"

extern char** environ;

namespace dockmock {

using nlohmann::json;

std::string normalize_image_ref(std::string_view ref) {
  std::string r(ref);
  while (!r.empty() && (r.back() == ' ' || r.back() == '\t')) r.pop_back();
  if (r.find('@') != std::string::npos) return r;
  size_t slash = r.rfind('/');
  size_t colon = r.rfind(':');
  if (colon == std::string::npos || (slash != std::string::npos && colon < slash)) {
    r += ":latest";
  }
  return r;
}

namespace {

ImageSnapshot snapshot_from_json(const std::string& key, const json& j) {
  if (!j.is_object()) throw StoreFault("snapshot '" + key + "' is not an object");
  ImageSnapshot s;
  s.image_ref = j.value("image_ref", key);
  if (j.contains("env")) {
    for (const auto& [name, value] : j.at("env").items()) {
      s.env[name] = value.get<std::string>();
    }
  }
  if (j.contains("executables")) {
    for (const auto& name : j.at("executables")) s.executables.insert(name.get<std::string>());
  }
  s.workdir = j.value("workdir", std::string("/"));
  if (s.workdir.empty()) s.workdir = "/";
  s.user = j.value("user", std::string("root"));
  if (s.user.empty()) s.user = "root";
  s.captured_at = j.value("captured_at", std::string());
  return s;
}

json snapshot_to_json(const ImageSnapshot& s) {
  json j = json::object();
  j["image_ref"] = s.image_ref;
  j["env"] = s.env;
  j["executables"] = s.executables;
  j["workdir"] = s.workdir;
  j["user"] = s.user;
  j["captured_at"] = s.captured_at;
  return j;
}

}  // namespace

SnapshotStore SnapshotStore::from_json_text(std::string_view text) {
  SnapshotStore store;
  try {
    json doc = json::parse(text);
    if (!doc.is_object()) throw StoreFault("snapshot store must be a JSON object");
    for (const auto& [key, value] : doc.items()) {
      ImageSnapshot s = snapshot_from_json(key, value);
      s.image_ref = normalize_image_ref(s.image_ref);
      store.records_[normalize_image_ref(key)] = std::move(s);
    }
  } catch (const json::exception& e) {
    throw StoreFault(std::string("malformed snapshot store: ") + e.what());
  }
  return store;
}

SnapshotStore SnapshotStore::load(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreFault("cannot read snapshot store " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return from_json_text(text.str());
}

std::string SnapshotStore::to_json_text() const {
  json doc = json::object();
  for (const auto& [key, s] : records_) doc[key] = snapshot_to_json(s);
  return doc.dump(2) + "\n";
}

void SnapshotStore::save(const std::filesystem::path& path) const {
  std::string text = to_json_text();
  std::filesystem::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StoreFault("cannot write snapshot store " + path.string());
    out << text;
    if (!out) throw StoreFault("cannot write snapshot store " + path.string());
  }
  std::error_code ec;
  std::filesystem::rename(tmp, path, ec);
  if (ec) throw StoreFault("cannot write snapshot store " + path.string() + ": " + ec.message());
}

const ImageSnapshot* SnapshotStore::find(std::string_view image_ref) const {
  auto it = records_.find(normalize_image_ref(image_ref));
  return it == records_.end() ? nullptr : &it->second;
}

void SnapshotStore::upsert(ImageSnapshot snapshot) {
  snapshot.image_ref = normalize_image_ref(snapshot.image_ref);
  std::string key = snapshot.image_ref;
  records_[key] = std::move(snapshot);
}

std::optional<ImageSnapshot> load_snapshot(std::string_view image_ref,
                                           const std::filesystem::path& store_path) {
  SnapshotStore store = SnapshotStore::load(store_path);
  if (const ImageSnapshot* s = store.find(image_ref)) return *s;
  return std::nullopt;
}

std::string utc_timestamp() {
  std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

bool ProcessRuntime::available() const {
  if (program_.find('/') != std::string::npos) return access(program_.c_str(), X_OK) == 0;
  const char* path = std::getenv("PATH");
  if (path == nullptr) return false;
  std::string dirs(path);
  size_t start = 0;
  while (start <= dirs.size()) {
    size_t end = dirs.find(':', start);
    if (end == std::string::npos) end = dirs.size();
    std::string candidate = dirs.substr(start, end - start) + "/" + program_;
    if (end > start && access(candidate.c_str(), X_OK) == 0) return true;
    start = end + 1;
  }
  return false;
}

ProcessResult ProcessRuntime::run(const std::vector<std::string>& argv) {
  std::vector<std::string> full;
  full.push_back(program_);
  full.insert(full.end(), argv.begin(), argv.end());
  std::vector<char*> cargv;
  for (auto& a : full) cargv.push_back(a.data());
  cargv.push_back(nullptr);

  int out_pipe[2];
  int err_pipe[2];
  if (pipe(out_pipe) != 0 || pipe(err_pipe) != 0) {
    throw RuntimeFault(std::string("pipe: ") + std::strerror(errno));
  }
  posix_spawn_file_actions_t actions;
  posix_spawn_file_actions_init(&actions);
  posix_spawn_file_actions_adddup2(&actions, out_pipe[1], 1);
  posix_spawn_file_actions_adddup2(&actions, err_pipe[1], 2);
  posix_spawn_file_actions_addclose(&actions, out_pipe[0]);
  posix_spawn_file_actions_addclose(&actions, err_pipe[0]);
  pid_t pid = 0;
  int rc = posix_spawnp(&pid, program_.c_str(), &actions, nullptr, cargv.data(), environ);
  posix_spawn_file_actions_destroy(&actions);
  close(out_pipe[1]);
  close(err_pipe[1]);
  if (rc != 0) {
    close(out_pipe[0]);
    close(err_pipe[0]);
    throw RuntimeFault("cannot run " + program_ + ": " + std::strerror(rc));
  }

  ProcessResult result;
  pollfd fds[2] = {{out_pipe[0], POLLIN, 0}, {err_pipe[0], POLLIN, 0}};
  std::string* sinks[2] = {&result.out, &result.err};
  int open_fds = 2;
  char buf[4096];
  while (open_fds > 0) {
    if (poll(fds, 2, -1) < 0) {
      if (errno == EINTR) continue;
      break;
    }
    for (int i = 0; i < 2; ++i) {
      if (fds[i].fd < 0 || !(fds[i].revents & (POLLIN | POLLHUP))) continue;
      ssize_t n = read(fds[i].fd, buf, sizeof buf);
      if (n > 0) {
        sinks[i]->append(buf, static_cast<size_t>(n));
      } else {
        close(fds[i].fd);
        fds[i].fd = -1;
        --open_fds;
      }
    }
  }
  int status = 0;
  waitpid(pid, &status, 0);
  result.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : 128;
  return result;
}

namespace {

constexpr const char* kEnvMarker = "__dockmock_env__";
constexpr const char* kExeMarker = "__dockmock_exe__";

// Lists the environment, then every entry of every PATH directory.
constexpr const char* kProbeScript =
    "echo __dockmock_env__; env; echo __dockmock_exe__; "
    "IFS=:; for d in $PATH; do [ -d \"$d\" ] && ls -1 \"$d\" 2>/dev/null; done; true";

ProcessResult checked(RuntimeInvoker& runtime, const std::vector<std::string>& argv) {
  ProcessResult r = runtime.run(argv);
  if (r.exit_code != 0) {
    std::string detail = r.err.empty() ? r.out : r.err;
    while (!detail.empty() && (detail.back() == '\n' || detail.back() == '\r')) detail.pop_back();
    throw RuntimeFault("runtime command failed (" + argv.front() + "): " + detail);
  }
  return r;
}

}  // namespace

ImageSnapshot capture_snapshot(std::string_view image_ref, RuntimeInvoker& runtime) {
  if (!runtime.available()) throw RuntimeFault("no container runtime available");
  std::string ref = normalize_image_ref(image_ref);

  ProcessResult inspect = runtime.run({"image", "inspect", "--format", "{{json .Config}}", ref});
  if (inspect.exit_code != 0) {
    log::info("pulling {}", ref);
    checked(runtime, {"pull", ref});
    inspect = checked(runtime, {"image", "inspect", "--format", "{{json .Config}}", ref});
  }

  ImageSnapshot s;
  s.image_ref = ref;
  try {
    json config = json::parse(inspect.out);
    if (config.is_object()) {
      if (config.contains("WorkingDir") && config["WorkingDir"].is_string() &&
          !config["WorkingDir"].get<std::string>().empty()) {
        s.workdir = config["WorkingDir"].get<std::string>();
      }
      if (config.contains("User") && config["User"].is_string() &&
          !config["User"].get<std::string>().empty()) {
        s.user = config["User"].get<std::string>();
      }
    }
  } catch (const json::exception& e) {
    throw RuntimeFault(std::string("unreadable image config: ") + e.what());
  }

  ProcessResult probe = checked(
      runtime, {"run", "--rm", "--network", "none", "--entrypoint", "/bin/sh", ref, "-c",
                kProbeScript});
  std::istringstream lines(probe.out);
  std::string line;
  int section = 0;
  while (std::getline(lines, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line == kEnvMarker) {
      section = 1;
      continue;
    }
    if (line == kExeMarker) {
      section = 2;
      continue;
    }
    if (section == 1) {
      size_t eq = line.find('=');
      if (eq == std::string::npos || eq == 0) continue;
      std::string name = line.substr(0, eq);
      if (name == "HOSTNAME" || name == "PWD" || name == "SHLVL" || name == "_") continue;
      s.env[name] = line.substr(eq + 1);
    } else if (section == 2 && !line.empty()) {
      s.executables.insert(line);
    }
  }
  if (section != 2) throw RuntimeFault("unexpected probe output for " + ref);
  s.executables.insert(posix_builtins().begin(), posix_builtins().end());
  s.captured_at = utc_timestamp();
  return s;
}

ImageSnapshot capture_into_store(std::string_view image_ref, RuntimeInvoker& runtime,
                                 const std::filesystem::path& store_path) {
  SnapshotStore store;
  std::error_code ec;
  if (std::filesystem::exists(store_path, ec)) store = SnapshotStore::load(store_path);
  ImageSnapshot s = capture_snapshot(image_ref, runtime);
  store.upsert(s);
  store.save(store_path);
  return s;
}

}  // namespace dockmock
