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

#include "dockmock/variables.hpp"

namespace dockmock {

void VariableMap::set_precise(const std::string& name, std::string value) {
  entries_[name] = std::move(value);
  precise_.insert(name);
}

void VariableMap::set_fuzzy(const std::string& name, std::string assumed) {
  entries_[name] = std::move(assumed);
  precise_.erase(name);
}

void VariableMap::set(const std::string& name, const ExpandedValue& value) {
  if (value.fuzzy) {
    set_fuzzy(name, value.text);
  } else {
    set_precise(name, value.text);
  }
}

void VariableMap::unset_precise(const std::string& name) {
  entries_.erase(name);
  precise_.insert(name);
}

VarLookup VariableMap::lookup(const std::string& name) const {
  auto it = entries_.find(name);
  if (precise_.count(name)) {
    if (it != entries_.end()) return {VarState::Precise, it->second};
    return {VarState::Unset, {}};
  }
  if (it == entries_.end()) {
    if (all_tracked_) return {VarState::Unset, {}};
    return {VarState::Fuzzy, {}};
  }
  // Fuzzy entries carry the value assumed when they were set, e.g. "/src"
  // for `ENV A=$HOME/src` with HOME unknown.
  return {VarState::Fuzzy, it->second};
}

bool VariableMap::is_precise(const std::string& name) const {
  return lookup(name).state != VarState::Fuzzy;
}

}  // namespace dockmock
