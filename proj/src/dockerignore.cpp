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

#include <sstream>

#include "dockmock/workspace.hpp"

namespace dockmock {

namespace {

std::string trim(std::string_view s) {
  size_t b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  size_t e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

// Same translation as Docker's pattern matcher.
std::string to_regex(std::string_view pattern) {
  std::string re = "^";
  for (size_t i = 0; i < pattern.size(); ++i) {
    char c = pattern[i];
    if (c == '*') {
      if (i + 1 < pattern.size() && pattern[i + 1] == '*') {
        ++i;
        if (i + 1 < pattern.size() && pattern[i + 1] == '/') ++i;
        re += (i + 1 == pattern.size()) ? ".*" : "(.*/)?";
      } else {
        re += "[^/]*";
      }
    } else if (c == '?') {
      re += "[^/]";
    } else if (c == '[') {
      size_t close = pattern.find(']', i + 1);
      if (close == std::string_view::npos) {
        re += "\\[";
        continue;
      }
      std::string body(pattern.substr(i + 1, close - i - 1));
      if (!body.empty() && body[0] == '!') body[0] = '^';
      re += "[" + body + "]";
      i = close;
    } else if (c == '\\' && i + 1 < pattern.size()) {
      ++i;
      re += '\\';
      re += pattern[i];
    } else if (std::string_view(".+()|{}$^").find(c) != std::string_view::npos) {
      re += '\\';
      re += c;
    } else {
      re += c;
    }
  }
  return re + "$";
}

}  // namespace

IgnoreRules IgnoreRules::parse(std::string_view text) {
  IgnoreRules rules;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    std::string p = trim(line);
    if (p.empty() || p[0] == '#') continue;
    bool exception = false;
    if (p[0] == '!') {
      exception = true;
      p = trim(p.substr(1));
    }
    std::string cleaned = normalize_path("/" + p).substr(1);
    if (cleaned.empty()) continue;
    // A trailing slash names a directory; the normalized form drops it.
    try {
      rules.rules_.push_back({cleaned, std::regex(to_regex(cleaned)), exception});
    } catch (const std::regex_error&) {
      continue;
    }
  }
  return rules;
}

bool IgnoreRules::excluded(std::string_view rel_path) const {
  std::string path = normalize_path("/" + std::string(rel_path)).substr(1);
  if (path.empty()) return false;
  std::vector<std::string> prefixes;
  auto parts = path_components(path);
  std::string acc;
  for (const auto& part : parts) {
    acc += acc.empty() ? part : "/" + part;
    prefixes.push_back(acc);
  }
  bool matched = false;
  for (const auto& rule : rules_) {
    bool hit = false;
    for (const auto& prefix : prefixes) {
      if (std::regex_match(prefix, rule.regex)) {
        hit = true;
        break;
      }
    }
    if (hit) matched = !rule.exception;
  }
  return matched;
}

}  // namespace dockmock
