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

#include "dockmock/dockerfile.hpp"

#include <algorithm>
#include <array>
#include <cctype>

#include <nlohmann/json.hpp>

namespace dockmock {

namespace {

struct KeywordEntry {
  std::string_view name;
  Keyword keyword;
};

constexpr std::array<KeywordEntry, 18> kKeywords = {{
    {"FROM", Keyword::From},
    {"RUN", Keyword::Run},
    {"COPY", Keyword::Copy},
    {"ADD", Keyword::Add},
    {"ENV", Keyword::Env},
    {"ARG", Keyword::Arg},
    {"WORKDIR", Keyword::Workdir},
    {"CMD", Keyword::Cmd},
    {"ENTRYPOINT", Keyword::Entrypoint},
    {"EXPOSE", Keyword::Expose},
    {"USER", Keyword::User},
    {"LABEL", Keyword::Label},
    {"VOLUME", Keyword::Volume},
    {"HEALTHCHECK", Keyword::Healthcheck},
    {"MAINTAINER", Keyword::Maintainer},
    {"ONBUILD", Keyword::Onbuild},
    {"STOPSIGNAL", Keyword::Stopsignal},
    {"SHELL", Keyword::Shell},
}};

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r' || c == '\f' || c == '\v'; }

std::string_view trim_left(std::string_view s) {
  while (!s.empty() && is_blank(s.front())) s.remove_prefix(1);
  return s;
}

std::string_view trim_right(std::string_view s) {
  while (!s.empty() && is_blank(s.back())) s.remove_suffix(1);
  return s;
}

std::string_view trim(std::string_view s) { return trim_right(trim_left(s)); }

std::string upper(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
  return out;
}

std::string lower(std::string_view s) {
  std::string out(s);
  std::transform(out.begin(), out.end(), out.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return out;
}

bool is_comment_line(std::string_view line) {
  auto t = trim_left(line);
  return !t.empty() && t.front() == '#';
}

std::vector<std::string_view> split_lines(std::string_view text) {
  std::vector<std::string_view> lines;
  size_t start = 0;
  while (start <= text.size()) {
    size_t nl = text.find('\n', start);
    if (nl == std::string_view::npos) {
      if (start < text.size()) lines.push_back(text.substr(start));
      break;
    }
    std::string_view line = text.substr(start, nl - start);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    lines.push_back(line);
    start = nl + 1;
  }
  return lines;
}

bool keyword_takes_flags(Keyword k) {
  switch (k) {
    case Keyword::From:
    case Keyword::Run:
    case Keyword::Copy:
    case Keyword::Add:
    case Keyword::Healthcheck:
      return true;
    default:
      return false;
  }
}

bool keyword_accepts_json(Keyword k) {
  switch (k) {
    case Keyword::Run:
    case Keyword::Cmd:
    case Keyword::Entrypoint:
    case Keyword::Copy:
    case Keyword::Add:
    case Keyword::Volume:
    case Keyword::Shell:
    case Keyword::Healthcheck:
      return true;
    default:
      return false;
  }
}

// Exec form: returns nullopt for shell form, a fault for a malformed array.
Expected<std::optional<std::vector<std::string>>, SyntaxFault> parse_json_form(
    std::string_view text, int line) {
  using Result = Expected<std::optional<std::vector<std::string>>, SyntaxFault>;
  auto t = trim(text);
  if (t.empty() || t.front() != '[') return Result(std::nullopt);
  auto parsed = nlohmann::json::parse(t.begin(), t.end(), nullptr, false);
  if (!parsed.is_discarded() && parsed.is_array()) {
    std::vector<std::string> out;
    bool all_strings = true;
    for (const auto& e : parsed) {
      if (!e.is_string()) {
        all_strings = false;
        break;
      }
      out.push_back(e.get<std::string>());
    }
    if (all_strings) return Result(std::optional(std::move(out)));
  }
  // `[ -f x ]` is an ordinary shell test; only `["...` commits to JSON.
  auto inner = trim_left(t.substr(1));
  if (!inner.empty() && inner.front() == '"') {
    bool closed = t.back() == ']';
    return Result(SyntaxFault{line, closed ? "malformed JSON array"
                                           : "unterminated JSON array"});
  }
  return Result(std::nullopt);
}

}  // namespace

std::string_view keyword_name(Keyword keyword) {
  for (const auto& e : kKeywords) {
    if (e.keyword == keyword) return e.name;
  }
  return "UNKNOWN";
}

Keyword keyword_from_text(std::string_view text) {
  auto up = upper(text);
  for (const auto& e : kKeywords) {
    if (e.name == up) return e.keyword;
  }
  return Keyword::Unknown;
}

std::optional<std::string> Instruction::flag(std::string_view name) const {
  for (const auto& f : flags) {
    if (f.name == name) return f.value;
  }
  return std::nullopt;
}

bool is_valid_utf8(std::string_view text, int* bad_line) {
  int line = 1;
  size_t i = 0;
  while (i < text.size()) {
    auto c = static_cast<unsigned char>(text[i]);
    size_t len = 0;
    uint32_t cp = 0;
    if (c < 0x80) {
      if (c == '\n') ++line;
      ++i;
      continue;
    } else if ((c & 0xE0) == 0xC0) {
      len = 2;
      cp = c & 0x1F;
    } else if ((c & 0xF0) == 0xE0) {
      len = 3;
      cp = c & 0x0F;
    } else if ((c & 0xF8) == 0xF0) {
      len = 4;
      cp = c & 0x07;
    } else {
      if (bad_line) *bad_line = line;
      return false;
    }
    if (i + len > text.size()) {
      if (bad_line) *bad_line = line;
      return false;
    }
    for (size_t k = 1; k < len; ++k) {
      auto cc = static_cast<unsigned char>(text[i + k]);
      if ((cc & 0xC0) != 0x80) {
        if (bad_line) *bad_line = line;
        return false;
      }
      cp = (cp << 6) | (cc & 0x3F);
    }
    // Overlong encodings, surrogates and out-of-range code points.
    static constexpr uint32_t kMin[5] = {0, 0, 0x80, 0x800, 0x10000};
    if (cp < kMin[len] || cp > 0x10FFFF || (cp >= 0xD800 && cp <= 0xDFFF)) {
      if (bad_line) *bad_line = line;
      return false;
    }
    i += len;
  }
  return true;
}

std::vector<std::string> split_words(std::string_view text, char escape) {
  std::vector<std::string> words;
  std::string current;
  bool in_word = false;
  size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (is_blank(c) || c == '\n') {
      if (in_word) {
        words.push_back(std::move(current));
        current.clear();
        in_word = false;
      }
      ++i;
      continue;
    }
    in_word = true;
    if (c == escape && i + 1 < text.size()) {
      current += c;
      current += text[i + 1];
      i += 2;
    } else if (c == '\'' || c == '"') {
      char quote = c;
      current += c;
      ++i;
      while (i < text.size() && text[i] != quote) {
        if (quote == '"' && text[i] == escape && i + 1 < text.size()) {
          current += text[i++];
        }
        current += text[i++];
      }
      if (i < text.size()) current += text[i++];
    } else {
      current += c;
      ++i;
    }
  }
  if (in_word) words.push_back(std::move(current));
  return words;
}

Expected<DockerfileAst, SyntaxFault> parse_dockerfile(std::string_view text) {
  using Result = Expected<DockerfileAst, SyntaxFault>;
  int bad_line = 0;
  if (!is_valid_utf8(text, &bad_line)) {
    return Result(SyntaxFault{bad_line, "invalid UTF-8"});
  }
  if (text.substr(0, 3) == "\xEF\xBB\xBF") text.remove_prefix(3);

  DockerfileAst ast;
  auto lines = split_lines(text);
  size_t idx = 0;

  // Parser directives occupy the leading comment lines only.
  std::vector<std::string> seen_directives;
  for (; idx < lines.size(); ++idx) {
    auto t = trim(lines[idx]);
    if (t.empty() || t.front() != '#') break;
    auto body = trim(t.substr(1));
    auto eq = body.find('=');
    if (eq == std::string_view::npos) break;
    auto name = lower(trim(body.substr(0, eq)));
    auto value = std::string(trim(body.substr(eq + 1)));
    if (name.empty() || !std::all_of(name.begin(), name.end(), [](unsigned char c) {
          return std::isalnum(c);
        })) {
      break;
    }
    if (std::find(seen_directives.begin(), seen_directives.end(), name) !=
        seen_directives.end()) {
      break;
    }
    seen_directives.push_back(name);
    ast.comments.push_back({static_cast<int>(idx + 1), std::string(t)});
    if (name == "escape") {
      if (value != "\\" && value != "`") {
        return Result(SyntaxFault{static_cast<int>(idx + 1),
                                  "invalid escape token '" + value + "'"});
      }
      ast.escape = value.front();
    } else {
      ast.notes.push_back("parser directive '" + name + "' ignored");
    }
  }

  const char escape = ast.escape;
  bool seen_from = false;
  for (; idx < lines.size(); ++idx) {
    std::string_view first = lines[idx];
    if (trim(first).empty()) continue;
    if (is_comment_line(first)) {
      ast.comments.push_back({static_cast<int>(idx + 1), std::string(trim(first))});
      continue;
    }

    const int line_start = static_cast<int>(idx + 1);
    std::string logical;
    std::string_view piece = first;
    while (true) {
      auto tr = trim_right(piece);
      if (!tr.empty() && tr.back() == escape) {
        tr.remove_suffix(1);
        logical.append(tr);
        // Skip comment and blank lines inside the continuation.
        size_t next = idx + 1;
        while (next < lines.size() &&
               (trim(lines[next]).empty() || is_comment_line(lines[next]))) {
          if (is_comment_line(lines[next])) {
            ast.comments.push_back(
                {static_cast<int>(next + 1), std::string(trim(lines[next]))});
          }
          ++next;
        }
        if (next >= lines.size()) {
          idx = next - 1;
          break;
        }
        idx = next;
        piece = lines[idx];
        continue;
      }
      logical.append(piece);
      break;
    }
    const int line_end = static_cast<int>(idx + 1);

    Instruction instr;
    instr.line_start = line_start;
    instr.line_end = line_end;
    std::string_view rest = trim_left(logical);
    size_t kw_end = 0;
    while (kw_end < rest.size() && !is_blank(rest[kw_end])) ++kw_end;
    instr.keyword_text = std::string(rest.substr(0, kw_end));
    instr.keyword = keyword_from_text(instr.keyword_text);
    rest = trim(rest.substr(kw_end));

    if (rest.empty() && instr.keyword != Keyword::Unknown) {
      return Result(SyntaxFault{line_start, std::string(keyword_name(instr.keyword)) +
                                                " requires at least one argument"});
    }

    if (keyword_takes_flags(instr.keyword)) {
      while (rest.substr(0, 2) == "--") {
        size_t end = 0;
        while (end < rest.size() && !is_blank(rest[end])) ++end;
        auto token = rest.substr(2, end - 2);
        auto eq = token.find('=');
        InstructionFlag f;
        f.name = std::string(token.substr(0, eq));
        if (eq != std::string_view::npos) f.value = std::string(token.substr(eq + 1));
        instr.flags.push_back(std::move(f));
        rest = trim_left(rest.substr(end));
      }
      if (rest.empty()) {
        return Result(SyntaxFault{line_start, std::string(keyword_name(instr.keyword)) +
                                                  " requires at least one argument"});
      }
    }

    if (instr.keyword == Keyword::Healthcheck) {
      auto words = split_words(rest, escape);
      auto head = words.empty() ? std::string() : upper(words.front());
      if (head == "CMD") {
        rest = trim(rest.substr(3));
        if (rest.empty()) {
          return Result(SyntaxFault{line_start, "HEALTHCHECK CMD requires a command"});
        }
      } else if (head != "NONE") {
        return Result(SyntaxFault{line_start, "HEALTHCHECK expects CMD or NONE"});
      }
    }

    instr.args_text = std::string(rest);
    if (keyword_accepts_json(instr.keyword)) {
      auto json = parse_json_form(rest, line_start);
      if (!json) return Result(json.error());
      if (json.value()) {
        instr.exec_form = true;
        instr.args = std::move(*json.value());
      }
    }
    if (!instr.exec_form) instr.args = split_words(rest, escape);
    if (instr.keyword == Keyword::Shell && !instr.exec_form) {
      return Result(SyntaxFault{line_start, "SHELL requires the arguments in JSON form"});
    }

    if (instr.keyword == Keyword::From) seen_from = true;
    instr.before_first_from = !seen_from && instr.keyword != Keyword::Arg;
    ast.instructions.push_back(std::move(instr));
  }
  return Result(std::move(ast));
}

Expected<std::vector<EnvPair>, SyntaxFault> split_env_args(const Instruction& instr) {
  using Result = Expected<std::vector<EnvPair>, SyntaxFault>;
  const auto name = std::string(keyword_name(instr.keyword));
  std::vector<EnvPair> pairs;
  const auto& words = instr.args;
  if (words.empty()) {
    return Result(SyntaxFault{instr.line_start, name + " requires at least one argument"});
  }

  if (instr.keyword == Keyword::Arg) {
    for (const auto& w : words) {
      auto eq = w.find('=');
      EnvPair p;
      p.name = w.substr(0, eq);
      if (eq != std::string::npos) p.value = w.substr(eq + 1);
      if (p.name.empty()) {
        return Result(SyntaxFault{instr.line_start, "ARG names can not be blank"});
      }
      pairs.push_back(std::move(p));
    }
    return Result(std::move(pairs));
  }

  // Legacy `ENV key value with spaces` form: first word has no '='.
  if (words.front().find('=') == std::string::npos) {
    if (words.size() < 2) {
      return Result(SyntaxFault{instr.line_start, name + " must have two arguments"});
    }
    std::string_view text = trim(instr.args_text);
    text = trim_left(text.substr(words.front().size()));
    pairs.push_back({words.front(), std::string(text)});
    return Result(std::move(pairs));
  }

  for (const auto& w : words) {
    auto eq = w.find('=');
    if (eq == std::string::npos) {
      return Result(SyntaxFault{instr.line_start,
                                "syntax error in " + name + ": '" + w + "' is not name=value"});
    }
    if (eq == 0) {
      return Result(SyntaxFault{instr.line_start, name + " names can not be blank"});
    }
    pairs.push_back({w.substr(0, eq), w.substr(eq + 1)});
  }
  return Result(std::move(pairs));
}

}  // namespace dockmock
