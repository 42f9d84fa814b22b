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

#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "dockmock/expected.hpp"
#include "dockmock/faults.hpp"

namespace dockmock {

enum class Keyword {
  From,
  Run,
  Copy,
  Add,
  Env,
  Arg,
  Workdir,
  Cmd,
  Entrypoint,
  Expose,
  User,
  Label,
  Volume,
  Healthcheck,
  Maintainer,
  Onbuild,
  Stopsignal,
  Shell,
  Unknown,
};

std::string_view keyword_name(Keyword keyword);
Keyword keyword_from_text(std::string_view text);

/// A leading `--name=value` option, e.g. `COPY --from=build`.
struct InstructionFlag {
  std::string name;
  std::string value;
};

struct Instruction {
  Keyword keyword = Keyword::Unknown;
  /// The keyword as written in the source, e.g. "RUNN".
  std::string keyword_text;
  /// Shell form: whitespace-separated words, quotes kept verbatim.
  /// Exec form: the JSON array elements.
  std::vector<std::string> args;
  std::vector<InstructionFlag> flags;
  /// Argument text after the flags, continuation lines joined. For
  /// HEALTHCHECK this is the text after `CMD`; for ONBUILD the nested
  /// instruction.
  std::string args_text;
  bool exec_form = false;
  int line_start = 0;
  int line_end = 0;
  /// Set for instructions other than ARG that precede the first FROM.
  bool before_first_from = false;

  std::optional<std::string> flag(std::string_view name) const;
};

struct Comment {
  int line = 0;
  std::string text;
};

struct DockerfileAst {
  std::vector<Instruction> instructions;
  std::vector<Comment> comments;
  /// Informational notes, e.g. ignored parser directives.
  std::vector<std::string> notes;
  char escape = '\\';
};

/// Parses Dockerfile text. Total: every failure is returned as a value.
Expected<DockerfileAst, SyntaxFault> parse_dockerfile(std::string_view text);

/// One `name[=value]` pair of ENV, ARG or LABEL. `value` is the raw,
/// unexpanded word; it is empty for an ARG without a default.
struct EnvPair {
  std::string name;
  std::optional<std::string> value;

  friend bool operator==(const EnvPair&, const EnvPair&) = default;
};

Expected<std::vector<EnvPair>, SyntaxFault> split_env_args(
    const Instruction& instr);

/// Splits on unquoted whitespace, keeping quote characters and escapes.
std::vector<std::string> split_words(std::string_view text, char escape = '\\');

/// `bad_line` receives the 1-based line of the first invalid sequence.
bool is_valid_utf8(std::string_view text, int* bad_line = nullptr);

}  // namespace dockmock
