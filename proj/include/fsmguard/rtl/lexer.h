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

#ifndef FSMGUARD_RTL_LEXER_H_
#define FSMGUARD_RTL_LEXER_H_

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "fsmguard/rtl/diagnostic.h"
#include "fsmguard/rtl/source_text.h"

namespace fsmguard {

enum class TokenKind {
  kKeyword,
  kIdentifier,
  kNumber,        // unsized decimal, e.g. 1
  kSizedLiteral,  // e.g. 3'b010
  kOperator,
  kComment,    // trivia, kept for annotation scanning and re-emission
  kDirective,  // `timescale and friends; trivia
  kEndOfFile,
};

std::string_view TokenKindName(TokenKind kind);

struct Token {
  TokenKind kind = TokenKind::kEndOfFile;
  std::string text;
  size_t offset = 0;
  size_t length = 0;
  int line = 1;
  int column = 1;

  bool IsTrivia() const {
    return kind == TokenKind::kComment || kind == TokenKind::kDirective;
  }
  bool Is(TokenKind k, std::string_view t) const { return kind == k && text == t; }
  bool IsKeyword(std::string_view t) const { return Is(TokenKind::kKeyword, t); }
  bool IsOperator(std::string_view t) const { return Is(TokenKind::kOperator, t); }
};

struct LexResult {
  // Always terminated by a kEndOfFile token.
  std::vector<Token> tokens;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return !HasErrors(diagnostics); }
};

// Splits `source` into tokens. Every byte belongs to exactly one token or to
// whitespace. Illegal characters produce an error diagnostic and are skipped.
LexResult Tokenize(const SourceText& source);

// Reserved words recognized by the lexer. SystemVerilog-only words are
// lexed as keywords so that the parser can reject them explicitly.
bool IsVerilogKeyword(std::string_view word);
bool IsSystemVerilogOnlyKeyword(std::string_view word);

}  // namespace fsmguard

#endif  // FSMGUARD_RTL_LEXER_H_
