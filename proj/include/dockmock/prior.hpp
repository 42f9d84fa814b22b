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

#include <filesystem>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

namespace dockmock {

inline constexpr const char* kDefaultPriorsPath = "dockmock-priors.json";

/// What is known about a base image before analysis: its environment and
/// the commands reachable through PATH. The file layout is not recorded.
struct ImageSnapshot {
  std::string image_ref;
  std::map<std::string, std::string> env;
  std::set<std::string> executables;
  std::string workdir = "/";
  std::string user = "root";
  std::string captured_at;

  friend bool operator==(const ImageSnapshot&, const ImageSnapshot&) = default;
};

/// "node" -> "node:latest"; digests and explicit tags are kept verbatim.
std::string normalize_image_ref(std::string_view ref);

/// Snapshots keyed by normalized image reference.
class SnapshotStore {
 public:
  /// Throws StoreFault when the file is unreadable or malformed.
  static SnapshotStore load(const std::filesystem::path& path);
  static SnapshotStore from_json_text(std::string_view text);

  /// Throws StoreFault when the file cannot be written.
  void save(const std::filesystem::path& path) const;
  std::string to_json_text() const;

  const ImageSnapshot* find(std::string_view image_ref) const;
  void upsert(ImageSnapshot snapshot);
  size_t size() const { return records_.size(); }
  const std::map<std::string, ImageSnapshot>& records() const { return records_; }

 private:
  std::map<std::string, ImageSnapshot> records_;
};

/// nullopt when the image is not in the store.
std::optional<ImageSnapshot> load_snapshot(std::string_view image_ref,
                                           const std::filesystem::path& store_path);

struct ProcessResult {
  int exit_code = 0;
  std::string out;
  std::string err;
};

/// Runs container-runtime commands. Capture is the only network user.
class RuntimeInvoker {
 public:
  virtual ~RuntimeInvoker() = default;
  virtual bool available() const = 0;
  virtual ProcessResult run(const std::vector<std::string>& argv) = 0;
};

/// Invokes the `docker` executable (or another CLI-compatible runtime).
class ProcessRuntime : public RuntimeInvoker {
 public:
  explicit ProcessRuntime(std::string program = "docker") : program_(std::move(program)) {}

  bool available() const override;
  ProcessResult run(const std::vector<std::string>& argv) override;

 private:
  std::string program_;
};

/// Inspects the image through `runtime`. Throws RuntimeFault.
ImageSnapshot capture_snapshot(std::string_view image_ref, RuntimeInvoker& runtime);

/// Captures and upserts into the store at `store_path`. The store is left
/// untouched when capture fails.
ImageSnapshot capture_into_store(std::string_view image_ref, RuntimeInvoker& runtime,
                                 const std::filesystem::path& store_path);

std::string utc_timestamp();

}  // namespace dockmock
