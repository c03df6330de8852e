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

#ifndef FSMGUARD_RTL_EMITTER_H_
#define FSMGUARD_RTL_EMITTER_H_

#include <string>

#include "fsmguard/rtl/ast.h"
#include "fsmguard/rtl/source_text.h"

namespace fsmguard {

// Prints `ast` in a fixed layout: four-space indentation, one declaration
// or statement per line, begin/end around every block. Comments are
// re-emitted next to the nodes they were attached to. The output re-parses
// to a structurally equal AST.
SourceText EmitVerilog(const FsmAst& ast, std::string origin = "");

}  // namespace fsmguard

#endif  // FSMGUARD_RTL_EMITTER_H_
