// Copyright 2026 The fsmguard Authors
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

#include "fsmguard/rtl/lexer.h"

#include <array>
#include <cctype>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace fsmguard {
namespace {

constexpr std::array<std::string_view, 40> kVerilogKeywords = {
    "module",   "endmodule", "input",     "output",   "inout",   "wire",
    "reg",      "parameter", "localparam", "always",  "begin",   "end",
    "if",       "else",      "case",      "endcase",  "default", "posedge",
    "negedge",  "or",        "assign",    "casex",    "casez",   "initial",
    "integer",  "function",  "endfunction", "task",   "endtask", "generate",
    "endgenerate", "for",    "while",     "forever",  "repeat",  "defparam",
    "force",    "release",   "deassign",  "signed",
};

constexpr std::array<std::string_view, 14> kSystemVerilogKeywords = {
    "logic",  "always_ff", "always_comb", "always_latch", "typedef",
    "enum",   "unique",    "priority",    "bit",          "int",
    "struct", "interface", "endinterface", "byte",
};

// Longest operators first.
constexpr std::array<std::string_view, 16> kMultiCharOperators = {
    "===", "!==", "<=", ">=", "==", "!=", "&&", "||",
    "<<",  ">>",  "~&", "~|", "~^", "^~", "+:", "-:",
};

constexpr std::string_view kSingleCharOperators = "()[]{};,:=.#@*+-/%!~&|^<>?";

bool IsIdentStart(char c) {
  return std::isalpha(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}
bool IsIdentChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '$';
}

class Lexer {
 public:
  explicit Lexer(const SourceText& source) : text_(source.content) {}

  LexResult Run() {
    while (pos_ < text_.size()) {
      char c = text_[pos_];
      if (c == '\n') {
        Advance(1);
        continue;
      }
      if (std::isspace(static_cast<unsigned char>(c))) {
        Advance(1);
        continue;
      }
      if (c == '/' && Peek(1) == '/') {
        LexLineComment();
      } else if (c == '/' && Peek(1) == '*') {
        LexBlockComment();
      } else if (c == '`') {
        LexDirective();
      } else if (IsIdentStart(c)) {
        LexWord();
      } else if (std::isdigit(static_cast<unsigned char>(c)) || c == '\'') {
        LexNumber();
      } else if (!LexOperator()) {
        result_.diagnostics.push_back(Diagnostic{
            Severity::kError, std::string(kErrIllegalCharacter),
            IllegalCharMessage(c), Span{line_, line_}});
        Advance(1);
      }
    }
    Token eof;
    eof.kind = TokenKind::kEndOfFile;
    eof.offset = text_.size();
    eof.line = line_;
    eof.column = column_;
    result_.tokens.push_back(eof);
    return std::move(result_);
  }

 private:
  char Peek(size_t ahead) const {
    return pos_ + ahead < text_.size() ? text_[pos_ + ahead] : '\0';
  }

  void Advance(size_t n) {
    for (size_t i = 0; i < n && pos_ < text_.size(); ++i, ++pos_) {
      if (text_[pos_] == '\n') {
        ++line_;
        column_ = 1;
      } else {
        ++column_;
      }
    }
  }

  void Emit(TokenKind kind, size_t length) {
    Token token;
    token.kind = kind;
    token.text = text_.substr(pos_, length);
    token.offset = pos_;
    token.length = length;
    token.line = line_;
    token.column = column_;
    Advance(length);
    result_.tokens.push_back(std::move(token));
  }

  static std::string IllegalCharMessage(char c) {
    unsigned char u = static_cast<unsigned char>(c);
    if (std::isprint(u)) return absl::StrCat("illegal character '", std::string(1, c), "'");
    return absl::StrFormat("illegal character 0x%02x", u);
  }

  void LexLineComment() {
    size_t end = text_.find('\n', pos_);
    if (end == std::string::npos) end = text_.size();
    Emit(TokenKind::kComment, end - pos_);
  }

  void LexBlockComment() {
    size_t end = text_.find("*/", pos_ + 2);
    if (end == std::string::npos) {
      result_.diagnostics.push_back(Diagnostic{Severity::kError, std::string(kErrSyntax),
                                               "unterminated block comment",
                                               Span{line_, line_}});
      Emit(TokenKind::kComment, text_.size() - pos_);
      return;
    }
    Emit(TokenKind::kComment, end + 2 - pos_);
  }

  void LexDirective() {
    size_t end = text_.find('\n', pos_);
    if (end == std::string::npos) end = text_.size();
    Emit(TokenKind::kDirective, end - pos_);
  }

  void LexWord() {
    size_t end = pos_;
    while (end < text_.size() && IsIdentChar(text_[end])) ++end;
    std::string_view word(text_.data() + pos_, end - pos_);
    bool keyword = IsVerilogKeyword(word) || IsSystemVerilogOnlyKeyword(word);
    Emit(keyword ? TokenKind::kKeyword : TokenKind::kIdentifier, end - pos_);
  }

  // Decimal number, optionally followed by a based literal: 3'b010, 'b1, 8'hff.
  void LexNumber() {
    size_t end = pos_;
    while (end < text_.size() &&
           (std::isdigit(static_cast<unsigned char>(text_[end])) || text_[end] == '_')) {
      ++end;
    }
    size_t tick = end;
    while (tick < text_.size() && text_[tick] == ' ') ++tick;
    if (tick < text_.size() && text_[tick] == '\'') {
      size_t base = tick + 1;
      if (base < text_.size() && (text_[base] == 's' || text_[base] == 'S')) ++base;
      if (base < text_.size() && std::string_view("bBoOdDhH").find(text_[base]) !=
                                     std::string_view::npos) {
        size_t digits = base + 1;
        while (digits < text_.size() && text_[digits] == ' ') ++digits;
        size_t stop = digits;
        while (stop < text_.size() &&
               (std::isxdigit(static_cast<unsigned char>(text_[stop])) ||
                std::string_view("xXzZ_?").find(text_[stop]) != std::string_view::npos)) {
          ++stop;
        }
        if (stop > digits) {
          Emit(TokenKind::kSizedLiteral, stop - pos_);
          return;
        }
      }
    }
    if (end == pos_) {
      // A lone tick that does not start a based literal.
      result_.diagnostics.push_back(Diagnostic{Severity::kError,
                                               std::string(kErrIllegalCharacter),
                                               "illegal character '''", Span{line_, line_}});
      Advance(1);
      return;
    }
    Emit(TokenKind::kNumber, end - pos_);
  }

  bool LexOperator() {
    for (std::string_view op : kMultiCharOperators) {
      if (text_.compare(pos_, op.size(), op) == 0) {
        Emit(TokenKind::kOperator, op.size());
        return true;
      }
    }
    if (kSingleCharOperators.find(text_[pos_]) != std::string_view::npos) {
      Emit(TokenKind::kOperator, 1);
      return true;
    }
    return false;
  }

  const std::string& text_;
  size_t pos_ = 0;
  int line_ = 1;
  int column_ = 1;
  LexResult result_;
};

}  // namespace

std::string_view TokenKindName(TokenKind kind) {
  switch (kind) {
    case TokenKind::kKeyword:
      return "kw";
    case TokenKind::kIdentifier:
      return "ident";
    case TokenKind::kNumber:
      return "number";
    case TokenKind::kSizedLiteral:
      return "sized-literal";
    case TokenKind::kOperator:
      return "op";
    case TokenKind::kComment:
      return "comment";
    case TokenKind::kDirective:
      return "directive";
    case TokenKind::kEndOfFile:
      return "eof";
  }
  return "?";
}

bool IsVerilogKeyword(std::string_view word) {
  for (std::string_view k : kVerilogKeywords) {
    if (k == word) return true;
  }
  return false;
}

bool IsSystemVerilogOnlyKeyword(std::string_view word) {
  for (std::string_view k : kSystemVerilogKeywords) {
    if (k == word) return true;
  }
  return false;
}

LexResult Tokenize(const SourceText& source) { return Lexer(source).Run(); }

}  // namespace fsmguard
