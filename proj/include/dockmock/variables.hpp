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

#include <map>
#include <set>
#include <string>

namespace dockmock {

/// A string together with whether any part of it derives from imprecise
/// context.
struct ExpandedValue {
  std::string text;
  bool fuzzy = false;

  friend bool operator==(const ExpandedValue&, const ExpandedValue&) = default;
};

enum class VarState { Precise, Unset, Fuzzy };

struct VarLookup {
  VarState state = VarState::Fuzzy;
  std::string value;
};

/// Variable state: `entries` holds known values, `precise_names` the names
/// tracked exactly (including names known to be unset), and `all_tracked`
/// whether names outside `entries` are known to be unset.
class VariableMap {
 public:
  void set_precise(const std::string& name, std::string value);
  void set_fuzzy(const std::string& name, std::string assumed = {});
  void set(const std::string& name, const ExpandedValue& value);
  void unset_precise(const std::string& name);

  VarLookup lookup(const std::string& name) const;
  bool is_precise(const std::string& name) const;

  bool all_tracked() const { return all_tracked_; }
  void set_all_tracked(bool tracked) { all_tracked_ = tracked; }

  const std::map<std::string, std::string>& entries() const { return entries_; }
  const std::set<std::string>& precise_names() const { return precise_; }

  friend bool operator==(const VariableMap&, const VariableMap&) = default;

 private:
  std::map<std::string, std::string> entries_;
  std::set<std::string> precise_;
  bool all_tracked_ = true;
};

}  // namespace dockmock
