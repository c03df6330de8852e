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

#ifndef FSMGUARD_RTL_DIAGNOSTIC_H_
#define FSMGUARD_RTL_DIAGNOSTIC_H_

#include <string>
#include <string_view>
#include <vector>

#include "fsmguard/rtl/source_text.h"

namespace fsmguard {

enum class Severity { kError, kWarning };

std::string_view SeverityName(Severity severity);

// Lint and parse finding. Errors mean the design could not be analyzed;
// warnings never block downstream analysis.
struct Diagnostic {
  Severity severity = Severity::kError;
  std::string code;
  std::string message;
  Span span;

  friend bool operator==(const Diagnostic&, const Diagnostic&) = default;
};

// Lint ids.
inline constexpr std::string_view kLintLatchInference = "LATCH_INFERENCE";
inline constexpr std::string_view kLintIncompleteSensitivity = "INCOMPLETE_SENSITIVITY";
inline constexpr std::string_view kLintObsoletePortStyle = "OBSOLETE_PORT_STYLE";
inline constexpr std::string_view kLintSemicolonAfterEnd = "SEMICOLON_AFTER_END";

// Parse/semantic error ids.
inline constexpr std::string_view kErrIllegalCharacter = "ILLEGAL_CHARACTER";
inline constexpr std::string_view kErrSyntax = "SYNTAX";
inline constexpr std::string_view kErrNetKindConflict = "NET_KIND_CONFLICT";
inline constexpr std::string_view kErrNoStateMachine = "NO_STATE_MACHINE";
inline constexpr std::string_view kErrMissingCase = "MISSING_CASE";
inline constexpr std::string_view kErrUnsizedLiteral = "UNSIZED_STATE_LITERAL";
inline constexpr std::string_view kErrDuplicateBlock = "DUPLICATE_BLOCK";
inline constexpr std::string_view kErrSystemVerilog = "SYSTEMVERILOG_CONSTRUCT";
inline constexpr std::string_view kErrUnsupported = "UNSUPPORTED_CONSTRUCT";
inline constexpr std::string_view kErrSemantic = "SEMANTIC";

bool HasErrors(const std::vector<Diagnostic>& diagnostics);

// "origin:line: error: message [CODE]"
std::string FormatDiagnostic(const Diagnostic& diagnostic, std::string_view origin);

}  // namespace fsmguard

#endif  // FSMGUARD_RTL_DIAGNOSTIC_H_
