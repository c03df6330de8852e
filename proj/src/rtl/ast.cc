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

#include "fsmguard/rtl/ast.h"

#include <algorithm>
#include <cctype>
#include <set>

namespace fsmguard {
namespace {

bool IsIdentifierToken(std::string_view token) {
  return !token.empty() &&
         (std::isalpha(static_cast<unsigned char>(token[0])) || token[0] == '_' ||
          token[0] == '$');
}

bool NoSpaceAfter(std::string_view token) {
  return token == "(" || token == "[" || token == "!" || token == "~";
}

bool NoSpaceBefore(std::string_view token) {
  return token == ")" || token == "]" || token == "," || token == "[";
}

}  // namespace

std::string Expr::Text() const {
  std::string out;
  for (size_t i = 0; i < tokens.size(); ++i) {
    if (i > 0 && !NoSpaceAfter(tokens[i - 1]) && !NoSpaceBefore(tokens[i])) {
      out.push_back(' ');
    }
    out += tokens[i];
  }
  return out;
}

std::vector<std::string> Expr::Identifiers() const {
  std::vector<std::string> out;
  for (const std::string& token : tokens) {
    if (IsIdentifierToken(token) &&
        std::find(out.begin(), out.end(), token) == out.end()) {
      out.push_back(token);
    }
  }
  return out;
}

std::optional<bool> Expr::ConstantValue() const {
  size_t first = 0;
  size_t last = tokens.size();
  while (last - first >= 3 && tokens[first] == "(" && tokens[last - 1] == ")") {
    ++first;
    --last;
  }
  if (last - first != 1) return std::nullopt;
  std::string_view token = tokens[first];
  if (token == "0" || token == "1") return token == "1";
  auto literal = Encoding::FromLiteral(token);
  if (literal.ok() && literal->width() == 1) return literal->value() == 1;
  return std::nullopt;
}

std::string_view PortDirectionName(PortDirection direction) {
  switch (direction) {
    case PortDirection::kInput:
      return "input";
    case PortDirection::kOutput:
      return "output";
    case PortDirection::kInout:
      return "inout";
  }
  return "input";
}

std::string SequentialBlock::ResetSignal() const {
  auto ids = reset_condition.Identifiers();
  return ids.empty() ? std::string() : ids.front();
}

std::string SequentialBlock::ClockSignal() const {
  std::string reset = ResetSignal();
  for (const EdgeEvent& event : events) {
    if (event.signal != reset) return event.signal;
  }
  return events.empty() ? std::string() : events.front().signal;
}

const CaseArm* CombinationalBlock::DefaultArm() const {
  for (const CaseArm& arm : arms) {
    if (arm.is_default()) return &arm;
  }
  return nullptr;
}

CaseArm* CombinationalBlock::DefaultArm() {
  return const_cast<CaseArm*>(std::as_const(*this).DefaultArm());
}

const CaseArm* CombinationalBlock::ArmFor(std::string_view state) const {
  for (const CaseArm& arm : arms) {
    if (std::find(arm.labels.begin(), arm.labels.end(), state) != arm.labels.end()) {
      return &arm;
    }
  }
  return nullptr;
}

CaseArm* CombinationalBlock::ArmFor(std::string_view state) {
  return const_cast<CaseArm*>(std::as_const(*this).ArmFor(state));
}

const Parameter* FsmAst::FindParameter(std::string_view name) const {
  for (const Parameter& p : parameters) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

Parameter* FsmAst::FindParameter(std::string_view name) {
  return const_cast<Parameter*>(std::as_const(*this).FindParameter(name));
}

const Port* FsmAst::FindPort(std::string_view name) const {
  for (const Port& p : ports) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

bool FsmAst::IsOutput(std::string_view name) const {
  const Port* port = FindPort(name);
  return port != nullptr && port->direction != PortDirection::kInput;
}

std::vector<std::string> FsmAst::StateNames() const {
  std::vector<std::string> names;
  names.reserve(parameters.size());
  for (const Parameter& p : parameters) names.push_back(p.name);
  return names;
}

std::vector<std::string> FsmAst::DataInputs() const {
  std::string clock = ClockName();
  std::string reset = ResetName();
  std::vector<std::string> out;
  for (const Port& p : ports) {
    if (p.direction == PortDirection::kInput && p.name != clock && p.name != reset) {
      out.push_back(p.name);
    }
  }
  return out;
}

std::vector<std::string> FsmAst::DeclaredIdentifiers() const {
  std::vector<std::string> out{module_name};
  for (const Port& p : ports) out.push_back(p.name);
  for (const NetDecl& n : nets) out.push_back(n.name);
  for (const Parameter& p : parameters) out.push_back(p.name);
  return out;
}

bool StructurallyEqual(const StatementList& a, const StatementList& b) {
  if (a.size() != b.size()) return false;
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i].node.index() != b[i].node.index()) return false;
    if (a[i].is_assignment()) {
      const Assignment& x = a[i].assignment();
      const Assignment& y = b[i].assignment();
      if (x.target != y.target || x.value != y.value || x.nonblocking != y.nonblocking) {
        return false;
      }
    } else {
      const IfStatement& x = a[i].if_statement();
      const IfStatement& y = b[i].if_statement();
      if (x.condition != y.condition || x.has_else != y.has_else ||
          !StructurallyEqual(x.then_branch, y.then_branch) ||
          !StructurallyEqual(x.else_branch, y.else_branch)) {
        return false;
      }
    }
  }
  return true;
}

bool StructurallyEqual(const FsmAst& a, const FsmAst& b) {
  if (a.module_name != b.module_name || a.port_style != b.port_style) return false;
  if (a.ports.size() != b.ports.size() || a.parameters.size() != b.parameters.size() ||
      a.nets.size() != b.nets.size() || a.assigns.size() != b.assigns.size()) {
    return false;
  }
  for (size_t i = 0; i < a.ports.size(); ++i) {
    const Port& x = a.ports[i];
    const Port& y = b.ports[i];
    if (x.name != y.name || x.direction != y.direction || x.kind != y.kind ||
        x.width != y.width) {
      return false;
    }
  }
  for (size_t i = 0; i < a.parameters.size(); ++i) {
    if (a.parameters[i].name != b.parameters[i].name ||
        a.parameters[i].value != b.parameters[i].value) {
      return false;
    }
  }
  for (size_t i = 0; i < a.nets.size(); ++i) {
    if (a.nets[i].name != b.nets[i].name || a.nets[i].kind != b.nets[i].kind ||
        a.nets[i].width != b.nets[i].width) {
      return false;
    }
  }
  for (size_t i = 0; i < a.assigns.size(); ++i) {
    if (a.assigns[i].target != b.assigns[i].target ||
        a.assigns[i].value != b.assigns[i].value) {
      return false;
    }
  }
  if (a.state_regs.current != b.state_regs.current || a.state_regs.next != b.state_regs.next ||
      a.state_regs.width != b.state_regs.width) {
    return false;
  }
  const SequentialBlock& sa = a.sequential;
  const SequentialBlock& sb = b.sequential;
  if (sa.events != sb.events || sa.reset_condition != sb.reset_condition ||
      sa.reset_target != sb.reset_target || sa.current_reg != sb.current_reg ||
      sa.next_reg != sb.next_reg) {
    return false;
  }
  const CombinationalBlock& ca = a.combinational;
  const CombinationalBlock& cb = b.combinational;
  if (ca.star_sensitivity != cb.star_sensitivity || ca.sensitivity != cb.sensitivity ||
      ca.case_subject != cb.case_subject || ca.arms.size() != cb.arms.size() ||
      !StructurallyEqual(ca.leading, cb.leading)) {
    return false;
  }
  for (size_t i = 0; i < ca.arms.size(); ++i) {
    if (ca.arms[i].labels != cb.arms[i].labels ||
        !StructurallyEqual(ca.arms[i].body, cb.arms[i].body)) {
      return false;
    }
  }
  std::set<std::string> pa(a.protected_annotations.begin(), a.protected_annotations.end());
  std::set<std::string> pb(b.protected_annotations.begin(), b.protected_annotations.end());
  return pa == pb;
}

}  // namespace fsmguard
