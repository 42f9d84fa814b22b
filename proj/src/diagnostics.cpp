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

#include "dockmock/diagnostics.hpp"

#include <sstream>

#include <nlohmann/json.hpp>

namespace dockmock {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

[[noreturn]] void bad_line(int line, const std::string& why) {
  throw ManifestFault("config line " + std::to_string(line) + ": " + why);
}

std::string unquote(std::string_view v, int line) {
  v = trim(v);
  if (v.size() >= 2 && (v.front() == '"' || v.front() == '\'') && v.back() == v.front()) {
    return std::string(v.substr(1, v.size() - 2));
  }
  if (v.empty()) bad_line(line, "missing value");
  return std::string(v);
}

FaultType code_or_throw(const std::string& code, int line) {
  auto t = fault_from_code(code);
  if (!t) bad_line(line, "unknown fault code '" + code + "'");
  return *t;
}

}  // namespace

DiagnosticConfig parse_config(std::string_view text) {
  DiagnosticConfig cfg;
  std::istringstream in{std::string(text)};
  std::string raw;
  int n = 0;
  while (std::getline(in, raw)) {
    ++n;
    std::string_view line = raw;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    auto eq = line.find('=');
    if (eq == std::string_view::npos) bad_line(n, "expected key = value");
    std::string key(trim(line.substr(0, eq)));
    std::string_view value = trim(line.substr(eq + 1));
    if (key == "disable") {
      if (value.empty() || value.front() != '[' || value.back() != ']') bad_line(n, "disable takes a list");
      std::string_view items = value.substr(1, value.size() - 2);
      size_t i = 0;
      while (i < items.size()) {
        size_t comma = items.find(',', i);
        if (comma == std::string_view::npos) comma = items.size();
        auto item = trim(items.substr(i, comma - i));
        if (!item.empty()) cfg.disabled.insert(code_or_throw(unquote(item, n), n));
        i = comma + 1;
      }
    } else if (key.rfind("severity.", 0) == 0) {
      FaultType t = code_or_throw(key.substr(9), n);
      std::string sev = unquote(value, n);
      for (auto& c : sev) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
      if (sev == "error") {
        cfg.severity[t] = Severity::Error;
      } else if (sev == "warning") {
        cfg.severity[t] = Severity::Warning;
      } else {
        bad_line(n, "severity must be error or warning");
      }
    } else {
      bad_line(n, "unknown key '" + key + "'");
    }
  }
  return cfg;
}

std::vector<Diagnostic> to_diagnostics(const std::vector<Warning>& warnings, const std::string& file,
                                       const DiagnosticConfig& config) {
  std::vector<Diagnostic> out;
  for (const auto& w : warnings) {
    if (config.disabled.count(w.fault_type)) continue;
    Diagnostic d;
    d.file = file;
    d.line = w.line;
    auto sev = config.severity.find(w.fault_type);
    d.severity = sev == config.severity.end() ? w.severity : sev->second;
    d.code = std::string(fault_code(w.fault_type));
    d.message = w.message;
    d.subject = w.subject;
    out.push_back(std::move(d));
  }
  return out;
}

std::string format_text(const std::vector<Diagnostic>& diags) {
  std::string out;
  for (const auto& d : diags) {
    std::string message = d.message;
    for (auto& c : message) {
      if (c == '\n' || c == '\r') c = ' ';
    }
    out += d.file + ":" + std::to_string(d.line) + ": " + std::string(severity_name(d.severity)) +
           " [" + d.code + "] " + message + "\n";
  }
  return out;
}

std::string format_json(const std::vector<Diagnostic>& diags) {
  // ordered_json keeps the documented key order.
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const auto& d : diags) {
    nlohmann::ordered_json o;
    o["file"] = d.file;
    o["line"] = d.line;
    o["severity"] = severity_name(d.severity);
    o["code"] = d.code;
    o["message"] = d.message;
    o["subject"] = d.subject;
    arr.push_back(std::move(o));
  }
  return arr.dump(2, ' ', false, nlohmann::json::error_handler_t::replace) + "\n";
}

std::vector<Diagnostic> parse_json_diagnostics(std::string_view text) {
  std::vector<Diagnostic> out;
  auto arr = nlohmann::json::parse(text);
  for (const auto& o : arr) {
    Diagnostic d;
    d.file = o.at("file").get<std::string>();
    d.line = o.at("line").get<int>();
    d.severity = o.at("severity").get<std::string>() == "WARNING" ? Severity::Warning : Severity::Error;
    d.code = o.at("code").get<std::string>();
    d.message = o.at("message").get<std::string>();
    d.subject = o.at("subject").get<std::string>();
    out.push_back(std::move(d));
  }
  return out;
}

bool fails(const std::vector<Diagnostic>& diags, FailOn threshold) {
  switch (threshold) {
    case FailOn::Never:
      return false;
    case FailOn::Warning:
      return !diags.empty();
    case FailOn::Error:
      return std::any_of(diags.begin(), diags.end(),
                         [](const Diagnostic& d) { return d.severity == Severity::Error; });
  }
  return false;
}

}  // namespace dockmock
