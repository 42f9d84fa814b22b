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

#include "dockmock/version_check.hpp"

#include <algorithm>
#include <cctype>
#include <regex>
#include <sstream>

namespace dockmock {

std::optional<Version> parse_version_prefix(std::string_view text) {
  Version v;
  size_t i = 0;
  while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
    int n = 0;
    size_t start = i;
    while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) {
      n = n * 10 + (text[i] - '0');
      if (n > 1000000) return std::nullopt;
      ++i;
    }
    if (i == start) break;
    v.push_back(n);
    if (i + 1 < text.size() && text[i] == '.' &&
        std::isdigit(static_cast<unsigned char>(text[i + 1]))) {
      ++i;
      continue;
    }
    break;
  }
  if (v.empty()) return std::nullopt;
  return v;
}

std::string version_text(const Version& v) {
  std::string out;
  for (size_t i = 0; i < v.size(); ++i) {
    if (i) out += '.';
    out += std::to_string(v[i]);
  }
  return out;
}

namespace {

int compare(const Version& a, const Version& b) {
  size_t n = std::max(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    int x = i < a.size() ? a[i] : 0;
    int y = i < b.size() ? b[i] : 0;
    if (x != y) return x < y ? -1 : 1;
  }
  return 0;
}

Version upper_bound_of(const Version& v) {
  Version up = v;
  ++up.back();
  return up;
}

bool prefix_compatible(const Version& a, const Version& b) {
  size_t n = std::min(a.size(), b.size());
  return std::equal(a.begin(), a.begin() + static_cast<long>(n), b.begin());
}

std::optional<VersionRequirement> parse_requirement(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); }),
          s.end());
  static const char* kOps[] = {"~>", ">=", "<=", "!=", ">", "<", "="};
  VersionRequirement req;
  for (const char* op : kOps) {
    std::string_view o(op);
    if (s.compare(0, o.size(), o) == 0) {
      req.op = std::string(o);
      s = s.substr(o.size());
      break;
    }
  }
  auto v = parse_version_prefix(s);
  if (!v) return std::nullopt;
  req.version = *v;
  return req;
}

std::string image_repository(std::string_view image_ref) {
  std::string ref(image_ref);
  size_t at = ref.find('@');
  if (at != std::string::npos) ref = ref.substr(0, at);
  size_t slash = ref.rfind('/');
  size_t colon = ref.rfind(':');
  if (colon != std::string::npos && (slash == std::string::npos || colon > slash)) {
    ref = ref.substr(0, colon);
  }
  slash = ref.rfind('/');
  return slash == std::string::npos ? ref : ref.substr(slash + 1);
}

std::string image_tag(std::string_view image_ref) {
  std::string ref(image_ref);
  if (ref.find('@') != std::string::npos) return {};
  size_t slash = ref.rfind('/');
  size_t colon = ref.rfind(':');
  if (colon == std::string::npos || (slash != std::string::npos && colon < slash)) return {};
  return ref.substr(colon + 1);
}

const char* env_name(Toolchain tc) { return tc == Toolchain::Ruby ? "RUBY_VERSION" : "GOLANG_VERSION"; }

bool repository_matches(Toolchain tc, const std::string& repo) {
  if (tc == Toolchain::Ruby) return repo == "ruby";
  return repo == "golang" || repo == "go";
}

}  // namespace

std::vector<VersionRequirement> gemfile_ruby_requirements(std::string_view gemfile) {
  static const std::regex line_re(R"(^\s*ruby\s*\(?\s*((['"])[^'"]*\2(\s*,\s*(['"])[^'"]*\4)*))");
  static const std::regex str_re(R"((['"])([^'"]*)\1)");
  std::vector<VersionRequirement> out;
  std::istringstream in{std::string(gemfile)};
  std::string line;
  while (std::getline(in, line)) {
    std::smatch m;
    if (!std::regex_search(line, m, line_re)) continue;
    std::string args = m[1].str();
    for (std::sregex_iterator it(args.begin(), args.end(), str_re), end; it != end; ++it) {
      if (auto req = parse_requirement((*it)[2].str())) out.push_back(*req);
    }
    break;
  }
  return out;
}

std::vector<VersionRequirement> gomod_go_requirements(std::string_view gomod) {
  static const std::regex go_re(R"(^\s*go\s+([0-9][0-9.]*)\s*(//.*)?$)");
  std::istringstream in{std::string(gomod)};
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::smatch m;
    if (std::regex_match(line, m, go_re)) {
      if (auto v = parse_version_prefix(m[1].str())) return {{">=", *v}};
    }
  }
  return {};
}

bool image_provides(Toolchain tc, std::string_view image_ref, const VariableMap& vars) {
  if (repository_matches(tc, image_repository(image_ref))) return true;
  return vars.lookup(env_name(tc)).state == VarState::Precise;
}

std::optional<Version> image_toolchain_version(Toolchain tc, std::string_view image_ref,
                                               const VariableMap& vars) {
  VarLookup env = vars.lookup(env_name(tc));
  if (env.state == VarState::Precise) {
    if (auto v = parse_version_prefix(env.value)) return v;
  }
  if (!repository_matches(tc, image_repository(image_ref))) return std::nullopt;
  return parse_version_prefix(image_tag(image_ref));
}

std::optional<VersionRequirement> unsatisfiable_requirement(
    const Version& image, const std::vector<VersionRequirement>& reqs) {
  if (image.empty()) return std::nullopt;
  Version lower = image;
  Version upper = upper_bound_of(image);
  for (const auto& req : reqs) {
    const Version& v = req.version;
    bool possible = true;
    if (req.op == "=") {
      possible = prefix_compatible(image, v);
    } else if (req.op == ">=" || req.op == ">") {
      possible = compare(v, upper) < 0;
    } else if (req.op == "<=") {
      possible = compare(lower, v) <= 0;
    } else if (req.op == "<") {
      possible = compare(lower, v) < 0;
    } else if (req.op == "~>") {
      Version cap(v.begin(), v.end() - (v.size() > 1 ? 1 : 0));
      cap = upper_bound_of(cap);
      possible = compare(v, upper) < 0 && compare(lower, cap) < 0;
    }
    if (!possible) return req;
  }
  return std::nullopt;
}

std::string_view toolchain_name(Toolchain tc) { return tc == Toolchain::Ruby ? "ruby" : "go"; }

std::string_view manifest_name(Toolchain tc) { return tc == Toolchain::Ruby ? "Gemfile" : "go.mod"; }

}  // namespace dockmock
