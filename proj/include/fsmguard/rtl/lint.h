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

#ifndef FSMGUARD_RTL_LINT_H_
#define FSMGUARD_RTL_LINT_H_

#include <vector>

#include "fsmguard/rtl/ast.h"
#include "fsmguard/rtl/diagnostic.h"

namespace fsmguard {

// Warning-only checks over a parsed design:
//   LATCH_INFERENCE         a combinational output assigned in some case arms
//                           but not on every path of the others;
//   INCOMPLETE_SENSITIVITY  explicit sensitivity list missing a read signal;
//   OBSOLETE_PORT_STYLE     Verilog-1995 port declarations;
//   SEMICOLON_AFTER_END     "end;".
std::vector<Diagnostic> Lint(const FsmAst& ast);

// True iff every path through `list` assigns `signal`.
bool AssignsOnAllPaths(const StatementList& list, std::string_view signal);

}  // namespace fsmguard

#endif  // FSMGUARD_RTL_LINT_H_
