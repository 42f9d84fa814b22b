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

#include "dockmock/shell.hpp"

#include <fnmatch.h>

#include <algorithm>
#include <array>
#include <cctype>
#include <map>

namespace dockmock::shell {

namespace {

using Kind = WordSegment::Kind;

bool is_blank(char c) { return c == ' ' || c == '\t' || c == '\r'; }
bool is_operator_char(char c) {
  return c == ';' || c == '&' || c == '|' || c == '(' || c == ')' || c == '<' || c == '>';
}
bool is_name_start(char c) { return std::isalpha(static_cast<unsigned char>(c)) || c == '_'; }
bool is_name_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

constexpr std::array<std::string_view, 16> kReserved = {
    "if", "then", "else", "elif", "fi", "do", "done", "case",
    "esac", "while", "until", "for", "{", "}", "!", "in"};

struct LexError {
  std::string reason;
};

struct Token {
  enum class Type { Word, Op, Newline, IoNumber, End };
  Type type = Type::End;
  std::string text;
  Word word;
  int line = 1;
  std::string heredoc_body;
};

class Lexer {
  enum class Mode { Unquoted, DoubleQuoted, BraceOperand, Raw };

 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::optional<LexError> run(std::vector<Token>& out) {
    struct PendingHeredoc {
      size_t token_index;
      std::string delimiter;
      bool strip_tabs;
    };
    std::vector<PendingHeredoc> pending;
    bool expect_delimiter = false;
    bool strip_tabs = false;

    while (true) {
      skip_blanks();
      if (pos_ >= src_.size()) {
        out.push_back(Token{Token::Type::End, {}, {}, line_, {}});
        break;
      }
      char c = src_[pos_];
      if (c == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') ++pos_;
        continue;
      }
      if (c == '\n') {
        out.push_back(Token{Token::Type::Newline, "\n", {}, line_, {}});
        ++pos_;
        ++line_;
        for (auto& h : pending) {
          auto body = read_heredoc(h.delimiter, h.strip_tabs);
          if (!body) return LexError{"unterminated here-document"};
          out[h.token_index].heredoc_body = std::move(*body);
        }
        pending.clear();
        continue;
      }
      if (is_operator_char(c)) {
        auto op = read_operator();
        out.push_back(Token{Token::Type::Op, op, {}, line_, {}});
        if (op == "<<" || op == "<<-") {
          expect_delimiter = true;
          strip_tabs = op == "<<-";
        }
        continue;
      }
      // IO number: digits immediately followed by a redirection operator.
      if (std::isdigit(static_cast<unsigned char>(c))) {
        size_t end = pos_;
        while (end < src_.size() && std::isdigit(static_cast<unsigned char>(src_[end]))) ++end;
        if (end < src_.size() && (src_[end] == '<' || src_[end] == '>')) {
          out.push_back(Token{Token::Type::IoNumber, std::string(src_.substr(pos_, end - pos_)),
                              {}, line_, {}});
          pos_ = end;
          continue;
        }
      }
      Token tok;
      tok.type = Token::Type::Word;
      tok.line = line_;
      size_t start = pos_;
      auto err = read_segments(tok.word.segments, Mode::Unquoted);
      if (err) return err;
      tok.text = std::string(src_.substr(start, pos_ - start));
      out.push_back(std::move(tok));
      if (expect_delimiter) {
        std::string delim;
        for (const auto& seg : out.back().word.segments) delim += literal_text(seg);
        pending.push_back({out.size() - 1, delim, strip_tabs});
        expect_delimiter = false;
      }
    }
    if (!pending.empty()) return LexError{"unterminated here-document"};
    return std::nullopt;
  }

  // Whole input as one word; blanks and operator characters are literal.
  std::optional<LexError> run_raw(Word& word) {
    auto err = read_segments(word.segments, Mode::Raw);
    if (err) return err;
    if (pos_ < src_.size()) return LexError{"malformed word"};
    return std::nullopt;
  }

 private:
  static std::string literal_text(const WordSegment& seg) {
    if (seg.kind == Kind::Literal) return seg.text;
    if (seg.kind == Kind::Quoted) {
      std::string out;
      for (const auto& c : seg.children) out += literal_text(c);
      return out;
    }
    return seg.source;
  }

  void skip_blanks() {
    while (pos_ < src_.size()) {
      if (is_blank(src_[pos_])) {
        ++pos_;
      } else if (src_[pos_] == '\\' && pos_ + 1 < src_.size() && src_[pos_ + 1] == '\n') {
        pos_ += 2;
        ++line_;
      } else {
        break;
      }
    }
  }

  std::string read_operator() {
    static constexpr std::array<std::string_view, 14> kOps = {
        "<<-", "&&", "||", ";;", "<<", ">>", "<&", ">&", "<>", ">|", ";", "&", "|", "("};
    for (auto op : kOps) {
      if (src_.substr(pos_, op.size()) == op) {
        pos_ += op.size();
        return std::string(op);
      }
    }
    char c = src_[pos_++];
    return std::string(1, c);
  }

  std::optional<std::string> read_heredoc(const std::string& delim, bool strip_tabs) {
    std::string body;
    while (pos_ <= src_.size()) {
      size_t nl = src_.find('\n', pos_);
      std::string_view line =
          src_.substr(pos_, nl == std::string_view::npos ? std::string_view::npos : nl - pos_);
      pos_ = nl == std::string_view::npos ? src_.size() + 1 : nl + 1;
      ++line_;
      std::string_view cmp = line;
      if (strip_tabs) {
        while (!cmp.empty() && cmp.front() == '\t') cmp.remove_prefix(1);
      }
      if (cmp == delim) {
        if (pos_ > src_.size()) pos_ = src_.size();
        return body;
      }
      body.append(cmp);
      body.push_back('\n');
      if (nl == std::string_view::npos) break;
    }
    pos_ = src_.size();
    return std::nullopt;
  }

  void flush_literal(std::vector<WordSegment>& out, std::string& lit, size_t lit_start) {
    if (lit.empty() && lit_start == pos_) return;
    if (lit_start == std::string::npos) return;
    WordSegment seg;
    seg.kind = Kind::Literal;
    seg.text = lit;
    seg.source = std::string(src_.substr(lit_start, pos_ - lit_start));
    out.push_back(std::move(seg));
    lit.clear();
  }

  // Reads segments until the terminator for `mode`. The terminator itself
  // is not consumed.
  std::optional<LexError> read_segments(std::vector<WordSegment>& out, Mode mode) {
    std::string lit;
    size_t lit_start = std::string::npos;
    auto begin_lit = [&] {
      if (lit_start == std::string::npos) lit_start = pos_;
    };
    auto end_lit = [&] {
      if (lit_start != std::string::npos) {
        flush_literal(out, lit, lit_start);
        lit_start = std::string::npos;
      }
    };
    bool at_word_start = true;

    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (mode == Mode::Unquoted && (is_blank(c) || c == '\n' || is_operator_char(c))) break;
      if (mode == Mode::DoubleQuoted && c == '"') break;
      if (mode == Mode::BraceOperand && c == '}') break;

      if (c == '\\') {
        if (pos_ + 1 >= src_.size()) {
          begin_lit();
          lit += c;
          ++pos_;
          continue;
        }
        char n = src_[pos_ + 1];
        if (n == '\n') {
          // Line continuation vanishes entirely.
          end_lit();
          pos_ += 2;
          ++line_;
          continue;
        }
        if (mode == Mode::DoubleQuoted && n != '$' && n != '`' && n != '"' && n != '\\') {
          begin_lit();
          lit += c;
          ++pos_;
          continue;
        }
        end_lit();
        WordSegment seg;
        seg.kind = Kind::Literal;
        seg.text = std::string(1, n);
        seg.escaped = true;
        seg.source = std::string(src_.substr(pos_, 2));
        out.push_back(std::move(seg));
        pos_ += 2;
        at_word_start = false;
        continue;
      }
      if (c == '\'' && mode != Mode::DoubleQuoted) {
        end_lit();
        size_t start = pos_;
        size_t close = src_.find('\'', pos_ + 1);
        if (close == std::string_view::npos) return LexError{"unterminated single quote"};
        WordSegment seg;
        seg.kind = Kind::Quoted;
        seg.quote = '\'';
        WordSegment inner;
        inner.kind = Kind::Literal;
        inner.text = std::string(src_.substr(start + 1, close - start - 1));
        inner.source = inner.text;
        line_ += static_cast<int>(std::count(inner.text.begin(), inner.text.end(), '\n'));
        seg.children.push_back(std::move(inner));
        pos_ = close + 1;
        seg.source = std::string(src_.substr(start, pos_ - start));
        out.push_back(std::move(seg));
        at_word_start = false;
        continue;
      }
      if (c == '"' && mode != Mode::DoubleQuoted) {
        end_lit();
        size_t start = pos_;
        ++pos_;
        WordSegment seg;
        seg.kind = Kind::Quoted;
        seg.quote = '"';
        auto err = read_segments(seg.children, Mode::DoubleQuoted);
        if (err) return err;
        if (pos_ >= src_.size()) return LexError{"unterminated double quote"};
        ++pos_;
        seg.source = std::string(src_.substr(start, pos_ - start));
        out.push_back(std::move(seg));
        at_word_start = false;
        continue;
      }
      if (c == '`') {
        end_lit();
        size_t start = pos_;
        ++pos_;
        while (pos_ < src_.size() && src_[pos_] != '`') {
          if (src_[pos_] == '\\') ++pos_;
          if (pos_ < src_.size() && src_[pos_] == '\n') ++line_;
          ++pos_;
        }
        if (pos_ >= src_.size()) return LexError{"unterminated backquote"};
        ++pos_;
        WordSegment seg;
        seg.kind = Kind::CommandSubst;
        seg.source = std::string(src_.substr(start, pos_ - start));
        out.push_back(std::move(seg));
        at_word_start = false;
        continue;
      }
      if (c == '$' && pos_ + 1 < src_.size()) {
        char n = src_[pos_ + 1];
        if (n == '(' || n == '{' || is_name_start(n) || std::isdigit(static_cast<unsigned char>(n)) ||
            std::string_view("?$!#@*-").find(n) != std::string_view::npos) {
          end_lit();
          auto err = read_dollar(out);
          if (err) return err;
          at_word_start = false;
          continue;
        }
      }
      if (c == '~' && at_word_start && mode == Mode::Unquoted) {
        end_lit();
        size_t start = pos_;
        ++pos_;
        while (pos_ < src_.size() && (is_name_char(src_[pos_]) || src_[pos_] == '-' ||
                                      src_[pos_] == '.')) {
          ++pos_;
        }
        WordSegment seg;
        seg.kind = Kind::Tilde;
        seg.text = std::string(src_.substr(start + 1, pos_ - start - 1));
        seg.source = std::string(src_.substr(start, pos_ - start));
        out.push_back(std::move(seg));
        at_word_start = false;
        continue;
      }
      begin_lit();
      lit += c;
      if (c == '\n') ++line_;
      ++pos_;
      at_word_start = false;
    }
    end_lit();
    return std::nullopt;
  }

  // Scans to the parenthesis closing the one just consumed, honoring
  // quotes and nesting. Leaves pos_ after the closing parenthesis.
  bool skip_balanced_parens(int depth) {
    while (pos_ < src_.size()) {
      char c = src_[pos_];
      if (c == '\\') {
        pos_ += 2;
        continue;
      }
      if (c == '\'') {
        size_t close = src_.find('\'', pos_ + 1);
        if (close == std::string_view::npos) return false;
        pos_ = close + 1;
        continue;
      }
      if (c == '"') {
        ++pos_;
        while (pos_ < src_.size() && src_[pos_] != '"') {
          if (src_[pos_] == '\\') ++pos_;
          ++pos_;
        }
        if (pos_ >= src_.size()) return false;
        ++pos_;
        continue;
      }
      if (c == '\n') ++line_;
      if (c == '(') ++depth;
      if (c == ')') {
        --depth;
        if (depth == 0) {
          ++pos_;
          return true;
        }
      }
      ++pos_;
    }
    return false;
  }

  std::optional<LexError> read_dollar(std::vector<WordSegment>& out) {
    size_t start = pos_;
    char n = src_[pos_ + 1];
    WordSegment seg;
    if (n == '(') {
      bool arith = pos_ + 2 < src_.size() && src_[pos_ + 2] == '(';
      pos_ += arith ? 3 : 2;
      if (!skip_balanced_parens(arith ? 2 : 1)) {
        return LexError{arith ? "unterminated arithmetic expansion"
                              : "unterminated command substitution"};
      }
      if (arith) {
        if (pos_ >= src_.size() || src_[pos_] != ')') {
          // `$((a) (b))` style: actually a command substitution.
          seg.kind = Kind::CommandSubst;
        } else {
          ++pos_;
          seg.kind = Kind::Arithmetic;
        }
      } else {
        seg.kind = Kind::CommandSubst;
      }
      seg.source = std::string(src_.substr(start, pos_ - start));
      out.push_back(std::move(seg));
      return std::nullopt;
    }
    if (n == '{') {
      pos_ += 2;
      seg.brace_form = true;
      seg.kind = Kind::VarRef;
      bool length = false;
      if (pos_ < src_.size() && src_[pos_] == '#' && pos_ + 1 < src_.size() &&
          src_[pos_ + 1] != '}') {
        length = true;
        ++pos_;
      }
      size_t name_start = pos_;
      if (pos_ < src_.size() && is_name_start(src_[pos_])) {
        while (pos_ < src_.size() && is_name_char(src_[pos_])) ++pos_;
      } else if (pos_ < src_.size() &&
                 (std::isdigit(static_cast<unsigned char>(src_[pos_])) ||
                  std::string_view("?$!#@*-").find(src_[pos_]) != std::string_view::npos)) {
        seg.kind = Kind::SpecialParam;
        if (std::isdigit(static_cast<unsigned char>(src_[pos_]))) {
          while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
        } else {
          ++pos_;
        }
      } else {
        return LexError{"bad substitution"};
      }
      seg.text = std::string(src_.substr(name_start, pos_ - name_start));
      if (length) seg.op = "length";
      if (pos_ >= src_.size()) return LexError{"unterminated parameter expansion"};
      if (src_[pos_] != '}') {
        static constexpr std::array<std::string_view, 12> kOps = {
            ":-", ":=", ":?", ":+", "##", "%%", "-", "=", "?", "+", "#", "%"};
        std::string op;
        for (auto candidate : kOps) {
          if (src_.substr(pos_, candidate.size()) == candidate) {
            op = std::string(candidate);
            break;
          }
        }
        if (op.empty() || length) {
          // Non-POSIX forms (${a/b/c}, ${a:1:2}) are kept but always fuzzy.
          seg.op = "unsupported";
          int depth = 1;
          while (pos_ < src_.size() && depth > 0) {
            if (src_[pos_] == '{') ++depth;
            if (src_[pos_] == '}') --depth;
            if (depth > 0) ++pos_;
          }
        } else {
          seg.op = op;
          pos_ += op.size();
          auto err = read_segments(seg.children, Mode::BraceOperand);
          if (err) return err;
        }
      }
      if (pos_ >= src_.size() || src_[pos_] != '}') {
        return LexError{"unterminated parameter expansion"};
      }
      ++pos_;
      seg.source = std::string(src_.substr(start, pos_ - start));
      out.push_back(std::move(seg));
      return std::nullopt;
    }
    ++pos_;
    if (is_name_start(n)) {
      size_t name_start = pos_;
      while (pos_ < src_.size() && is_name_char(src_[pos_])) ++pos_;
      seg.kind = Kind::VarRef;
      seg.text = std::string(src_.substr(name_start, pos_ - name_start));
    } else {
      seg.kind = Kind::SpecialParam;
      seg.text = std::string(1, n);
      ++pos_;
    }
    seg.source = std::string(src_.substr(start, pos_ - start));
    out.push_back(std::move(seg));
    return std::nullopt;
  }

  std::string_view src_;
  size_t pos_ = 0;
  int line_ = 1;
};

bool is_reserved(const Token& tok, std::string_view which = {}) {
  if (tok.type != Token::Type::Word) return false;
  if (tok.word.segments.size() != 1) return false;
  const auto& seg = tok.word.segments.front();
  if (seg.kind != Kind::Literal || seg.escaped) return false;
  if (!which.empty()) return seg.text == which;
  return std::find(kReserved.begin(), kReserved.end(), seg.text) != kReserved.end();
}

std::string closer_for(std::string_view opener) {
  if (opener == "if") return "fi";
  if (opener == "case") return "esac";
  if (opener == "{") return "}";
  return "done";
}

bool is_opener(const Token& tok) {
  return is_reserved(tok, "if") || is_reserved(tok, "case") || is_reserved(tok, "for") ||
         is_reserved(tok, "while") || is_reserved(tok, "until") || is_reserved(tok, "{");
}

bool is_redirect_op(const std::string& op) {
  return op == "<" || op == ">" || op == ">>" || op == ">|" || op == "<>" || op == "<&" ||
         op == ">&" || op == "<<" || op == "<<-";
}

class Parser {
 public:
  explicit Parser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Expected<ShellProgram, SyntaxFault> parse() {
    ShellProgram program;
    auto err = parse_list(program.items, /*nested=*/false);
    if (err) return *err;
    if (peek().type != Token::Type::End) {
      if (peek().type == Token::Type::Op && peek().text == ")") {
        return SyntaxFault{peek().line, "unmatched parenthesis"};
      }
      return SyntaxFault{peek().line, "unexpected '" + peek().text + "'"};
    }
    return program;
  }

 private:
  const Token& peek(size_t ahead = 0) const {
    size_t i = std::min(idx_ + ahead, toks_.size() - 1);
    return toks_[i];
  }
  const Token& next() {
    const Token& t = toks_[idx_];
    if (idx_ + 1 < toks_.size()) ++idx_;
    return t;
  }
  bool at_op(std::string_view op) const {
    return peek().type == Token::Type::Op && peek().text == op;
  }
  void skip_newlines() {
    while (peek().type == Token::Type::Newline) next();
  }
  bool at_command_start() const {
    const Token& t = peek();
    if (t.type == Token::Type::Word) {
      // Closing reserved words end a list rather than start a command.
      for (auto closer : {"then", "else", "elif", "fi", "do", "done", "esac", "}", "in"}) {
        if (is_reserved(t, closer)) return false;
      }
      return true;
    }
    if (t.type == Token::Type::IoNumber) return true;
    if (t.type == Token::Type::Op) return t.text == "(" || is_redirect_op(t.text);
    return false;
  }

  std::optional<SyntaxFault> parse_list(std::vector<CommandList>& items, bool nested) {
    while (true) {
      skip_newlines();
      if (peek().type == Token::Type::End) return std::nullopt;
      if (nested && at_op(")")) return std::nullopt;
      if (!at_command_start()) {
        if (peek().type == Token::Type::Op && peek().text == ")") return std::nullopt;
        return SyntaxFault{peek().line, "unexpected '" + peek().text + "'"};
      }
      CommandList list;
      auto err = parse_command_list(list);
      if (err) return err;
      items.push_back(std::move(list));
      if (peek().type == Token::Type::Newline) continue;
      if (peek().type == Token::Type::End) return std::nullopt;
      if (at_op(")")) return std::nullopt;
      return SyntaxFault{peek().line, "unexpected '" + peek().text + "'"};
    }
  }

  std::optional<SyntaxFault> parse_command_list(CommandList& list) {
    while (true) {
      Pipeline pipeline;
      auto err = parse_pipeline(pipeline);
      if (err) return err;
      list.pipelines.push_back(std::move(pipeline));
      if (at_op("&&") || at_op("||")) {
        list.ops.push_back(next().text);
        skip_newlines();
        continue;
      }
      if (at_op(";") || at_op("&")) {
        std::string op = next().text;
        if (at_command_start()) {
          list.ops.push_back(op);
          continue;
        }
        list.terminator = op;
      }
      return std::nullopt;
    }
  }

  std::optional<SyntaxFault> parse_pipeline(Pipeline& pipeline) {
    if (is_reserved(peek(), "!")) {
      next();
      pipeline.negated = true;
    }
    while (true) {
      Command cmd;
      auto err = parse_command(cmd);
      if (err) return err;
      pipeline.commands.push_back(std::move(cmd));
      if (at_op("|")) {
        next();
        skip_newlines();
        continue;
      }
      return std::nullopt;
    }
  }

  std::optional<SyntaxFault> parse_redirects(std::vector<Redirect>& out, bool& heredoc) {
    while (peek().type == Token::Type::IoNumber ||
           (peek().type == Token::Type::Op && is_redirect_op(peek().text))) {
      Redirect r;
      if (peek().type == Token::Type::IoNumber) r.fd = std::stoi(next().text);
      if (peek().type != Token::Type::Op || !is_redirect_op(peek().text)) {
        return SyntaxFault{peek().line, "expected redirection operator"};
      }
      const Token& op = next();
      r.op = op.text;
      if (peek().type != Token::Type::Word) {
        return SyntaxFault{peek().line, "missing redirection target"};
      }
      const Token& target = next();
      r.target = target.word;
      if (r.op == "<<" || r.op == "<<-") {
        r.heredoc_body = target.heredoc_body;
        heredoc = true;
      }
      out.push_back(std::move(r));
    }
    return std::nullopt;
  }

  // Skips a compound command starting at an opener; returns its source.
  Expected<std::string, SyntaxFault> skip_compound() {
    std::vector<std::string> stack;
    std::string source;
    bool cmd_pos = true;
    int start_line = peek().line;
    while (true) {
      const Token& t = peek();
      if (t.type == Token::Type::End) {
        return SyntaxFault{start_line, "unterminated compound command"};
      }
      if (cmd_pos && is_opener(t)) {
        stack.push_back(closer_for(t.word.segments.front().text));
        source += t.text + " ";
        next();
        cmd_pos = !(is_reserved(t, "for") || is_reserved(t, "case"));
        continue;
      }
      if (cmd_pos && !stack.empty() && is_reserved(t, stack.back())) {
        stack.pop_back();
        source += t.text;
        next();
        if (stack.empty()) return source;
        source += " ";
        cmd_pos = false;
        continue;
      }
      source += t.text;
      if (t.type != Token::Type::Newline) source += " ";
      if (t.type == Token::Type::Op || t.type == Token::Type::Newline) {
        cmd_pos = true;
      } else if (t.type == Token::Type::Word) {
        cmd_pos = is_reserved(t, "then") || is_reserved(t, "do") || is_reserved(t, "else") ||
                  is_reserved(t, "elif") || is_reserved(t, "!");
      }
      next();
    }
  }

  std::optional<SyntaxFault> parse_command(Command& out) {
    const Token& t = peek();
    if (t.type == Token::Type::Op && t.text == "(") {
      next();
      Subshell sub;
      auto err = parse_list(sub.body, /*nested=*/true);
      if (err) return err;
      if (!at_op(")")) return SyntaxFault{peek().line, "unmatched parenthesis"};
      next();
      bool heredoc = false;
      err = parse_redirects(sub.redirects, heredoc);
      if (err) return err;
      if (heredoc) {
        out = OpaqueNode{"( ... )", "here-document"};
      } else {
        out = std::move(sub);
      }
      return std::nullopt;
    }
    if (is_opener(t)) {
      auto src = skip_compound();
      if (!src) return src.error();
      std::vector<Redirect> redirects;
      bool heredoc = false;
      auto err = parse_redirects(redirects, heredoc);
      if (err) return err;
      out = OpaqueNode{*src, "compound command"};
      return std::nullopt;
    }
    if (t.type == Token::Type::Word && is_reserved(t) && !is_reserved(t, "in")) {
      return SyntaxFault{t.line, "unexpected '" + t.text + "'"};
    }
    // Function definition: name ( ) compound-command
    if (t.type == Token::Type::Word && peek(1).type == Token::Type::Op && peek(1).text == "(" &&
        peek(2).type == Token::Type::Op && peek(2).text == ")") {
      std::string name = next().text;
      next();
      next();
      skip_newlines();
      std::string body;
      if (is_opener(peek())) {
        auto src = skip_compound();
        if (!src) return src.error();
        body = *src;
      } else if (at_op("(")) {
        next();
        Subshell ignored;
        auto err = parse_list(ignored.body, /*nested=*/true);
        if (err) return err;
        if (!at_op(")")) return SyntaxFault{peek().line, "unmatched parenthesis"};
        next();
        body = "( ... )";
      } else {
        return SyntaxFault{peek().line, "function body must be a compound command"};
      }
      std::vector<Redirect> redirects;
      bool heredoc = false;
      auto err = parse_redirects(redirects, heredoc);
      if (err) return err;
      out = OpaqueNode{name + "() " + body, "function definition"};
      return std::nullopt;
    }

    SimpleCommand cmd;
    bool heredoc = false;
    std::string source;
    while (true) {
      const Token& cur = peek();
      if (cur.type == Token::Type::Word) {
        source += cur.text + " ";
        if (cmd.words.empty()) {
          auto assignment = as_assignment(cur.word);
          if (assignment) {
            cmd.assignments.push_back(std::move(*assignment));
            next();
            continue;
          }
        }
        cmd.words.push_back(cur.word);
        next();
        continue;
      }
      if (cur.type == Token::Type::IoNumber ||
          (cur.type == Token::Type::Op && is_redirect_op(cur.text))) {
        auto err = parse_redirects(cmd.redirects, heredoc);
        if (err) return err;
        continue;
      }
      break;
    }
    if (cmd.words.empty() && cmd.assignments.empty() && cmd.redirects.empty()) {
      return SyntaxFault{peek().line, "unexpected '" + peek().text + "'"};
    }
    if (heredoc) {
      out = OpaqueNode{source, "here-document"};
    } else {
      out = std::move(cmd);
    }
    return std::nullopt;
  }

  static std::optional<Assignment> as_assignment(const Word& word) {
    if (word.segments.empty()) return std::nullopt;
    const auto& first = word.segments.front();
    if (first.kind != Kind::Literal || first.escaped) return std::nullopt;
    auto eq = first.text.find('=');
    if (eq == std::string::npos || eq == 0) return std::nullopt;
    std::string name = first.text.substr(0, eq);
    if (!is_valid_name(name)) return std::nullopt;
    Assignment a;
    a.name = name;
    std::string rest = first.text.substr(eq + 1);
    if (!rest.empty()) {
      WordSegment lit;
      lit.kind = Kind::Literal;
      lit.text = rest;
      lit.source = first.source.substr(first.source.find('=') + 1);
      a.value.segments.push_back(std::move(lit));
    }
    for (size_t i = 1; i < word.segments.size(); ++i) a.value.segments.push_back(word.segments[i]);
    return a;
  }

  std::vector<Token> toks_;
  size_t idx_ = 0;
};

size_t count_in_lists(const std::vector<CommandList>& lists);

size_t count_in_command(const Command& cmd) {
  if (const auto* sub = std::get_if<Subshell>(&cmd)) return 1 + count_in_lists(sub->body);
  return 1;
}

size_t count_in_lists(const std::vector<CommandList>& lists) {
  size_t n = 0;
  for (const auto& list : lists) {
    for (const auto& p : list.pipelines) {
      for (const auto& c : p.commands) n += count_in_command(c);
    }
  }
  return n;
}

// ---------------------------------------------------------------------------
// Expansion

struct Piece {
  std::string text;
  bool quoted = false;
  bool from_expansion = false;
};

struct Expander {
  const VariableMap& vars;
  const ExpandedValue& home;
  bool fuzzy = false;

  std::string flatten(const std::vector<WordSegment>& segs, bool in_dquote) {
    std::vector<Piece> pieces;
    expand(segs, in_dquote, pieces);
    std::string out;
    for (const auto& p : pieces) out += p.text;
    return out;
  }

  std::string as_pattern(const std::vector<WordSegment>& segs, bool in_dquote) {
    std::vector<Piece> pieces;
    expand(segs, in_dquote, pieces);
    std::string out;
    for (const auto& p : pieces) {
      if (!p.quoted && !p.from_expansion) {
        out += p.text;
        continue;
      }
      for (char c : p.text) {
        if (c == '*' || c == '?' || c == '[' || c == ']' || c == '\\') out += '\\';
        out += c;
      }
    }
    return out;
  }

  void expand(const std::vector<WordSegment>& segs, bool in_dquote, std::vector<Piece>& out) {
    for (const auto& seg : segs) {
      switch (seg.kind) {
        case Kind::Literal:
          out.push_back({seg.text, in_dquote || seg.escaped, false});
          break;
        case Kind::Quoted:
          if (seg.quote == '\'') {
            out.push_back({seg.children.empty() ? std::string() : seg.children.front().text, true,
                           false});
          } else {
            out.push_back({"", true, false});
            expand(seg.children, true, out);
          }
          break;
        case Kind::Tilde:
          if (seg.text.empty()) {
            fuzzy = fuzzy || home.fuzzy;
            out.push_back({home.text, true, false});
          } else if (seg.text == "root") {
            out.push_back({"/root", true, false});
          } else {
            fuzzy = true;
            out.push_back({"", true, false});
          }
          break;
        case Kind::VarRef:
          out.push_back({expand_var(seg, in_dquote), in_dquote, true});
          break;
        case Kind::CommandSubst:
        case Kind::Arithmetic:
        case Kind::SpecialParam:
          fuzzy = true;
          out.push_back({"", in_dquote, true});
          break;
      }
    }
  }

  std::string expand_var(const WordSegment& seg, bool in_dquote) {
    VarLookup v = vars.lookup(seg.text);
    const std::string& op = seg.op;
    const bool is_fuzzy = v.state == VarState::Fuzzy;
    const bool is_set = v.state == VarState::Precise;
    const bool non_empty = is_set && !v.value.empty();

    if (op.empty()) {
      fuzzy = fuzzy || is_fuzzy;
      return v.value;
    }
    if (op == "length") {
      fuzzy = fuzzy || is_fuzzy;
      return std::to_string(v.value.size());
    }
    if (op == "unsupported") {
      fuzzy = true;
      return {};
    }
    if (op == ":-" || op == "-" || op == ":=" || op == "=") {
      bool colon = op.front() == ':';
      if (is_fuzzy) {
        // Assumption: the fuzzy value is taken as-is; an empty assumed value
        // selects the default.
        fuzzy = true;
        if (!v.value.empty()) return v.value;
        return flatten(seg.children, in_dquote);
      }
      bool use_default = colon ? !non_empty : !is_set;
      if (use_default) return flatten(seg.children, in_dquote);
      return v.value;
    }
    if (op == ":+" || op == "+") {
      bool colon = op.front() == ':';
      if (is_fuzzy) {
        fuzzy = true;
        return {};
      }
      bool use_alt = colon ? non_empty : is_set;
      return use_alt ? flatten(seg.children, in_dquote) : std::string();
    }
    if (op == ":?" || op == "?") {
      // An unset variable aborts the shell; the outcome is not modeled.
      bool colon = op.front() == ':';
      bool ok = colon ? non_empty : is_set;
      if (!ok) fuzzy = true;
      return v.value;
    }
    // Prefix/suffix removal.
    fuzzy = fuzzy || is_fuzzy;
    std::string pattern = as_pattern(seg.children, in_dquote);
    const std::string& value = v.value;
    const size_t n = value.size();
    auto matches = [&](const std::string& s) { return fnmatch(pattern.c_str(), s.c_str(), 0) == 0; };
    if (op == "#") {
      for (size_t k = 0; k <= n; ++k) {
        if (matches(value.substr(0, k))) return value.substr(k);
      }
    } else if (op == "##") {
      for (size_t k = n + 1; k-- > 0;) {
        if (matches(value.substr(0, k))) return value.substr(k);
      }
    } else if (op == "%") {
      for (size_t k = 0; k <= n; ++k) {
        if (matches(value.substr(n - k))) return value.substr(0, n - k);
      }
    } else if (op == "%%") {
      for (size_t k = n + 1; k-- > 0;) {
        if (matches(value.substr(n - k))) return value.substr(0, n - k);
      }
    }
    return value;
  }
};

bool is_ifs_space(char c) { return c == ' ' || c == '\t' || c == '\n'; }

}  // namespace

std::string Word::source() const {
  std::string out;
  for (const auto& s : segments) out += s.source;
  return out;
}

bool Word::has_glob() const {
  for (const auto& s : segments) {
    if (s.kind == Kind::Literal && !s.escaped &&
        s.text.find_first_of("*?[") != std::string::npos) {
      return true;
    }
  }
  return false;
}

bool Word::is_literal() const {
  for (const auto& s : segments) {
    if (s.kind == Kind::Literal) continue;
    if (s.kind == Kind::Quoted) {
      for (const auto& c : s.children) {
        if (c.kind != Kind::Literal) return false;
      }
      continue;
    }
    return false;
  }
  return true;
}

bool is_valid_name(std::string_view name) {
  if (name.empty() || !is_name_start(name.front())) return false;
  return std::all_of(name.begin(), name.end(), is_name_char);
}

Expected<ShellProgram, SyntaxFault> parse_shell(std::string_view script) {
  std::vector<Token> tokens;
  Lexer lexer(script);
  if (auto err = lexer.run(tokens)) return SyntaxFault{1, err->reason};
  Parser parser(std::move(tokens));
  return parser.parse();
}

Expected<Word, SyntaxFault> parse_word(std::string_view text) {
  Word word;
  Lexer lexer(text);
  if (auto err = lexer.run_raw(word)) return SyntaxFault{1, err->reason};
  return word;
}

size_t count_commands(const ShellProgram& program) { return count_in_lists(program.items); }

ExpandedValue expand_word(const Word& word, const VariableMap& vars, const ExpandedValue& home) {
  Expander ex{vars, home};
  std::string text = ex.flatten(word.segments, false);
  return {std::move(text), ex.fuzzy};
}

ExpandedValue expand_pattern(const Word& word, const VariableMap& vars,
                             const ExpandedValue& home) {
  Expander ex{vars, home};
  std::string text = ex.as_pattern(word.segments, false);
  return {std::move(text), ex.fuzzy};
}

std::vector<ExpandedValue> expand_fields(const Word& word, const VariableMap& vars,
                                         const ExpandedValue& home) {
  Expander ex{vars, home};
  std::vector<Piece> pieces;
  ex.expand(word.segments, false, pieces);
  std::vector<ExpandedValue> fields;
  std::string current;
  bool started = false;
  for (const auto& p : pieces) {
    if (p.from_expansion && !p.quoted) {
      for (char c : p.text) {
        if (is_ifs_space(c)) {
          if (started) {
            fields.push_back({current, ex.fuzzy});
            current.clear();
            started = false;
          }
        } else {
          current += c;
          started = true;
        }
      }
    } else {
      current += p.text;
      started = started || p.quoted || !p.text.empty();
    }
  }
  if (started) fields.push_back({current, ex.fuzzy});
  // A fuzzy expansion that vanished still stands for an unknown argument.
  if (fields.empty() && ex.fuzzy) fields.push_back({"", true});
  return fields;
}

}  // namespace dockmock::shell
