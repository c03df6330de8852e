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

#ifndef FSMGUARD_RTL_AST_H_
#define FSMGUARD_RTL_AST_H_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "fsmguard/rtl/source_text.h"
#include "fsmguard/stg/encoding.h"

namespace fsmguard {

// Comment trivia attached to a node. Texts are verbatim, including the
// comment markers. Comments do not take part in structural equality.
struct Comments {
  std::vector<std::string> leading;
  std::string trailing;

  bool empty() const { return leading.empty() && trailing.empty(); }
};

// Guard and right-hand-side expressions are kept as token sequences; the
// frontend never evaluates them beyond literal constants.
struct Expr {
  std::vector<std::string> tokens;

  std::string Text() const;
  // Identifier tokens in order of first appearance.
  std::vector<std::string> Identifiers() const;
  // Folds a bare literal (optionally parenthesized): 1'b0 / 0 -> false,
  // 1'b1 / 1 -> true. Anything else is not constant.
  std::optional<bool> ConstantValue() const;
  bool IsIdentifier(std::string_view name) const {
    return tokens.size() == 1 && tokens[0] == name;
  }
  static Expr Identifier(std::string name) { return Expr{{std::move(name)}}; }

  friend bool operator==(const Expr&, const Expr&) = default;
};

struct Assignment {
  std::string target;
  Expr value;
  bool nonblocking = false;
};

struct Statement;
using StatementList = std::vector<Statement>;

struct IfStatement {
  Expr condition;
  StatementList then_branch;
  bool has_else = false;
  StatementList else_branch;
};

struct Statement {
  std::variant<Assignment, IfStatement> node;
  Span span;
  Comments comments;

  bool is_assignment() const { return std::holds_alternative<Assignment>(node); }
  bool is_if() const { return std::holds_alternative<IfStatement>(node); }
  Assignment& assignment() { return std::get<Assignment>(node); }
  const Assignment& assignment() const { return std::get<Assignment>(node); }
  IfStatement& if_statement() { return std::get<IfStatement>(node); }
  const IfStatement& if_statement() const { return std::get<IfStatement>(node); }
};

struct CaseArm {
  // Empty for the default arm.
  std::vector<std::string> labels;
  StatementList body;
  Span span;
  Comments comments;
  std::vector<std::string> closing_comments;

  bool is_default() const { return labels.empty(); }
};

enum class PortDirection { kInput, kOutput, kInout };
enum class NetKind { kImplicit, kWire, kReg };
enum class PortStyle { kAnsi, kNonAnsi };

std::string_view PortDirectionName(PortDirection direction);

struct Port {
  std::string name;
  PortDirection direction = PortDirection::kInput;
  NetKind kind = NetKind::kImplicit;
  int width = 1;
  Span span;
  Comments comments;
};

struct Parameter {
  std::string name;
  Encoding value;
  bool from_localparam = false;
  Span span;
  Comments comments;
};

// Internal reg/wire declaration, one name per entry.
struct NetDecl {
  std::string name;
  NetKind kind = NetKind::kReg;
  int width = 1;
  Span span;
  Comments comments;
};

struct ContinuousAssign {
  std::string target;
  Expr value;
  Span span;
  Comments comments;
};

enum class Edge { kPosedge, kNegedge };

struct EdgeEvent {
  Edge edge = Edge::kPosedge;
  std::string signal;

  friend bool operator==(const EdgeEvent&, const EdgeEvent&) = default;
};

// always @(posedge clk [or posedge rst]) if (<reset>) cur <= S; else cur <= nxt;
struct SequentialBlock {
  std::vector<EdgeEvent> events;
  Expr reset_condition;
  std::string reset_target;
  std::string current_reg;
  std::string next_reg;
  Span span;
  Comments comments;

  // First identifier of the reset condition.
  std::string ResetSignal() const;
  // The edge-triggered signal that is not the reset.
  std::string ClockSignal() const;
};

// always @(*) / @(a, b) with optional leading assignments and one case.
struct CombinationalBlock {
  bool star_sensitivity = true;
  std::vector<std::string> sensitivity;
  // Assignments before the case statement ("leading defaults").
  StatementList leading;
  std::string case_subject;
  std::vector<CaseArm> arms;
  std::vector<std::string> case_closing_comments;
  Span span;
  Span case_span;
  Comments comments;

  const CaseArm* DefaultArm() const;
  CaseArm* DefaultArm();
  bool HasDefaultArm() const { return DefaultArm() != nullptr; }
  // Arm whose label list contains `state`, or nullptr.
  const CaseArm* ArmFor(std::string_view state) const;
  CaseArm* ArmFor(std::string_view state);
};

struct StateRegisters {
  std::string current;
  std::string next;
  int width = 1;
};

// Syntactic facts that only lint consumes.
struct LintFact {
  enum class Kind { kSemicolonAfterEnd };
  Kind kind = Kind::kSemicolonAfterEnd;
  Span span;
};

struct FsmAst {
  std::string module_name;
  PortStyle port_style = PortStyle::kAnsi;
  std::vector<Port> ports;
  std::vector<Parameter> parameters;
  std::vector<NetDecl> nets;
  std::vector<ContinuousAssign> assigns;
  StateRegisters state_regs;
  SequentialBlock sequential;
  CombinationalBlock combinational;
  // Names from `// @protected NAME` comments, in order of appearance.
  std::vector<std::string> protected_annotations;
  // Normalizations the parser applied (e.g. localparam -> parameter).
  std::vector<std::string> notes;
  std::vector<LintFact> lint_facts;
  std::vector<std::string> closing_comments;
  Comments comments;
  Span span;

  const Parameter* FindParameter(std::string_view name) const;
  Parameter* FindParameter(std::string_view name);
  const Port* FindPort(std::string_view name) const;
  bool IsOutput(std::string_view name) const;
  std::vector<std::string> StateNames() const;
  std::string ClockName() const { return sequential.ClockSignal(); }
  std::string ResetName() const { return sequential.ResetSignal(); }
  // Inputs other than clock and reset, in port order.
  std::vector<std::string> DataInputs() const;
  // Every identifier the design declares (module, ports, nets, parameters).
  std::vector<std::string> DeclaredIdentifiers() const;
};

// Equality over the design structure: ignores spans, comments, notes and
// lint facts, and treats declaration order of ports/nets/parameters as
// significant.
bool StructurallyEqual(const FsmAst& a, const FsmAst& b);
bool StructurallyEqual(const StatementList& a, const StatementList& b);

// Visits every statement (pre-order) in a statement list.
template <typename List, typename Fn>
void ForEachStatement(List& list, Fn&& fn) {
  for (auto& statement : list) {
    fn(statement);
    if (statement.is_if()) {
      ForEachStatement(statement.if_statement().then_branch, fn);
      ForEachStatement(statement.if_statement().else_branch, fn);
    }
  }
}

}  // namespace fsmguard

#endif  // FSMGUARD_RTL_AST_H_
