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

#ifndef FSMGUARD_RTL_PARSER_H_
#define FSMGUARD_RTL_PARSER_H_

#include <optional>
#include <vector>

#include "fsmguard/rtl/ast.h"
#include "fsmguard/rtl/diagnostic.h"
#include "fsmguard/rtl/lexer.h"
#include "fsmguard/rtl/source_text.h"

namespace fsmguard {

struct ParseResult {
  // Present iff no error diagnostic was produced.
  std::optional<FsmAst> ast;
  std::vector<Diagnostic> diagnostics;

  bool ok() const { return ast.has_value(); }
};

// Parses one FSM module in the supported Verilog subset:
//   * ANSI or non-ANSI port lists, wire/reg declarations;
//   * `parameter`/`localparam` state encodings as sized binary literals;
//   * one edge-triggered block: if (<reset>) cur <= S; else cur <= nxt;
//   * one combinational block: optional leading assignments, then a single
//     case over the current-state register with if/else guarded arms.
ParseResult ParseModule(const std::vector<Token>& tokens);

// Tokenize + ParseModule. Lexer errors are reported and block the parse.
ParseResult ParseSource(const SourceText& source);

}  // namespace fsmguard

#endif  // FSMGUARD_RTL_PARSER_H_
