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

// POSIX shell subset: simple commands, pipelines, and-or lists and
// subshells are represented in full; every other construct is kept as an
// opaque node.

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "dockmock/expected.hpp"
#include "dockmock/faults.hpp"
#include "dockmock/variables.hpp"

namespace dockmock::shell {

struct WordSegment {
  enum class Kind {
    Literal,
    VarRef,
    Tilde,
    Quoted,
    CommandSubst,
    Arithmetic,
    SpecialParam,
  };

  Kind kind = Kind::Literal;
  /// Original source text; concatenation over a word reproduces it.
  std::string source;
  /// Literal: text after escape removal. VarRef/SpecialParam: the name.
  /// Tilde: the user name (empty for the current user).
  std::string text;
  /// Literal produced by a backslash escape; never a glob character.
  bool escaped = false;
  bool brace_form = false;
  /// VarRef modifier such as ":-", "+", "#", "%%"; empty for plain refs.
  std::string op;
  /// Quoted: inner segments. VarRef: the modifier's operand word.
  std::vector<WordSegment> children;
  /// Quoted: '\'' or '"'.
  char quote = 0;
};

struct Word {
  std::vector<WordSegment> segments;

  std::string source() const;
  /// Unquoted, unescaped `*`, `?` or `[` present.
  bool has_glob() const;
  /// Every segment is literal text (possibly quoted).
  bool is_literal() const;
};

struct Redirect {
  std::optional<int> fd;
  /// One of < > >> >| <> <& >& << <<-
  std::string op;
  Word target;
  std::string heredoc_body;
};

struct Assignment {
  std::string name;
  Word value;
};

struct SimpleCommand {
  std::vector<Assignment> assignments;
  std::vector<Word> words;
  std::vector<Redirect> redirects;
};

struct CommandList;

struct Subshell {
  std::vector<CommandList> body;
  std::vector<Redirect> redirects;
};

struct OpaqueNode {
  std::string source;
  std::string reason;
};

using Command = std::variant<SimpleCommand, Subshell, OpaqueNode>;

struct Pipeline {
  bool negated = false;
  std::vector<Command> commands;
};

/// Pipelines joined by operators; `ops[i]` sits between `pipelines[i]` and
/// `pipelines[i + 1]` and is one of ";", "&&", "||", "&". `terminator` is
/// a trailing ";" or "&" (or empty).
struct CommandList {
  std::vector<Pipeline> pipelines;
  std::vector<std::string> ops;
  std::string terminator;
};

struct ShellProgram {
  std::vector<CommandList> items;
};

Expected<ShellProgram, SyntaxFault> parse_shell(std::string_view script);

/// Parses a single word (no operators). Used for Dockerfile instruction
/// arguments, which follow shell quoting and `$var` rules.
Expected<Word, SyntaxFault> parse_word(std::string_view text);

/// Total number of SimpleCommand, Subshell and OpaqueNode nodes.
size_t count_commands(const ShellProgram& program);

ExpandedValue expand_word(const Word& word, const VariableMap& vars,
                          const ExpandedValue& home);

/// Expansion followed by field splitting of unquoted expansion results.
/// A word that expands to nothing unquoted yields no field.
std::vector<ExpandedValue> expand_fields(const Word& word, const VariableMap& vars,
                                         const ExpandedValue& home);

/// Expands the word into a glob pattern: characters from quotes, escapes
/// and expansions are backslash-escaped so only literal glob characters
/// stay active.
ExpandedValue expand_pattern(const Word& word, const VariableMap& vars,
                             const ExpandedValue& home);

bool is_valid_name(std::string_view name);

}  // namespace dockmock::shell
