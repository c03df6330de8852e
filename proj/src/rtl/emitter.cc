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

#include "fsmguard/rtl/emitter.h"

#include <string>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace fsmguard {
namespace {

class Printer {
 public:
  void Line(int depth, std::string_view text, std::string_view trailing = "") {
    out_.append(depth * 4, ' ');
    out_.append(text);
    if (!trailing.empty()) {
      out_.push_back(' ');
      out_.append(trailing);
    }
    out_.push_back('\n');
  }

  void Comments(int depth, const std::vector<std::string>& comments) {
    for (const std::string& c : comments) Line(depth, c);
  }

  void Blank() { out_.push_back('\n'); }

  std::string Take() { return std::move(out_); }

 private:
  std::string out_;
};

std::string Range(int width) {
  if (width <= 1) return "";
  return absl::StrCat("[", width - 1, ":0] ");
}

std::string KindPrefix(NetKind kind) {
  switch (kind) {
    case NetKind::kWire:
      return "wire ";
    case NetKind::kReg:
      return "reg ";
    case NetKind::kImplicit:
      return "";
  }
  return "";
}

std::string PortDecl(const Port& port) {
  return absl::StrCat(std::string(PortDirectionName(port.direction)), " ", KindPrefix(port.kind),
                      Range(port.width), port.name);
}

void EmitStatements(Printer& p, int depth, const StatementList& list);

void EmitIf(Printer& p, int depth, const Statement& s, const char* prefix) {
  const IfStatement& branch = s.if_statement();
  p.Line(depth, absl::StrCat(prefix, "if (", branch.condition.Text(), ") begin"),
         s.comments.trailing);
  EmitStatements(p, depth + 1, branch.then_branch);
  if (!branch.has_else) {
    p.Line(depth, "end");
    return;
  }
  const StatementList& other = branch.else_branch;
  if (other.size() == 1 && other[0].is_if() && other[0].comments.leading.empty()) {
    EmitIf(p, depth, other[0], "end else ");
    return;
  }
  p.Line(depth, "end else begin");
  EmitStatements(p, depth + 1, other);
  p.Line(depth, "end");
}

void EmitStatements(Printer& p, int depth, const StatementList& list) {
  for (const Statement& s : list) {
    p.Comments(depth, s.comments.leading);
    if (s.is_assignment()) {
      const Assignment& a = s.assignment();
      p.Line(depth,
             absl::StrCat(a.target, a.nonblocking ? " <= " : " = ", a.value.Text(), ";"),
             s.comments.trailing);
    } else {
      EmitIf(p, depth, s, "");
    }
  }
}

std::string Sensitivity(const SequentialBlock& seq) {
  std::vector<std::string> parts;
  for (const EdgeEvent& e : seq.events) {
    parts.push_back(
        absl::StrCat(e.edge == Edge::kPosedge ? "posedge " : "negedge ", e.signal));
  }
  return absl::StrJoin(parts, " or ");
}

}  // namespace

SourceText EmitVerilog(const FsmAst& ast, std::string origin) {
  Printer p;
  p.Comments(0, ast.comments.leading);
  if (ast.port_style == PortStyle::kAnsi) {
    if (ast.ports.empty()) {
      p.Line(0, absl::StrCat("module ", ast.module_name, ";"), ast.comments.trailing);
    } else {
      p.Line(0, absl::StrCat("module ", ast.module_name, " ("));
      for (size_t i = 0; i < ast.ports.size(); ++i) {
        const Port& port = ast.ports[i];
        p.Comments(1, port.comments.leading);
        bool last = i + 1 == ast.ports.size();
        p.Line(1, absl::StrCat(PortDecl(port), last ? "" : ","), port.comments.trailing);
      }
      p.Line(0, ");", ast.comments.trailing);
    }
  } else {
    std::vector<std::string> names;
    for (const Port& port : ast.ports) names.push_back(port.name);
    p.Line(0, absl::StrCat("module ", ast.module_name, "(", absl::StrJoin(names, ", "), ");"),
           ast.comments.trailing);
    for (const Port& port : ast.ports) {
      p.Comments(1, port.comments.leading);
      p.Line(1, absl::StrCat(PortDecl(port), ";"), port.comments.trailing);
    }
  }

  if (!ast.parameters.empty()) p.Blank();
  for (const Parameter& param : ast.parameters) {
    p.Comments(1, param.comments.leading);
    p.Line(1, absl::StrCat("parameter ", param.name, " = ", param.value.ToLiteral(), ";"),
           param.comments.trailing);
  }
  if (!ast.protected_annotations.empty()) {
    p.Line(1, absl::StrCat("// @protected ", absl::StrJoin(ast.protected_annotations, ", ")));
  }

  if (!ast.nets.empty()) p.Blank();
  for (const NetDecl& net : ast.nets) {
    p.Comments(1, net.comments.leading);
    p.Line(1, absl::StrCat(KindPrefix(net.kind), Range(net.width), net.name, ";"),
           net.comments.trailing);
  }
  for (const ContinuousAssign& assign : ast.assigns) {
    p.Comments(1, assign.comments.leading);
    p.Line(1, absl::StrCat("assign ", assign.target, " = ", assign.value.Text(), ";"),
           assign.comments.trailing);
  }

  const SequentialBlock& seq = ast.sequential;
  p.Blank();
  p.Comments(1, seq.comments.leading);
  p.Line(1, absl::StrCat("always @(", Sensitivity(seq), ") begin"));
  p.Line(2, absl::StrCat("if (", seq.reset_condition.Text(), ") begin"));
  p.Line(3, absl::StrCat(seq.current_reg, " <= ", seq.reset_target, ";"));
  p.Line(2, "end else begin");
  p.Line(3, absl::StrCat(seq.current_reg, " <= ", seq.next_reg, ";"));
  p.Line(2, "end");
  p.Line(1, "end", seq.comments.trailing);

  const CombinationalBlock& comb = ast.combinational;
  p.Blank();
  p.Comments(1, comb.comments.leading);
  std::string sensitivity =
      comb.star_sensitivity ? "*" : absl::StrJoin(comb.sensitivity, " or ");
  p.Line(1, absl::StrCat("always @(", sensitivity, ") begin"));
  EmitStatements(p, 2, comb.leading);
  p.Line(2, absl::StrCat("case (", comb.case_subject, ")"));
  for (const CaseArm& arm : comb.arms) {
    p.Comments(3, arm.comments.leading);
    std::string label = arm.is_default() ? "default" : absl::StrJoin(arm.labels, ", ");
    p.Line(3, absl::StrCat(label, ": begin"), arm.comments.trailing);
    EmitStatements(p, 4, arm.body);
    p.Comments(4, arm.closing_comments);
    p.Line(3, "end");
  }
  p.Comments(3, comb.case_closing_comments);
  p.Line(2, "endcase");
  p.Line(1, "end", comb.comments.trailing);

  p.Comments(1, ast.closing_comments);
  p.Line(0, "endmodule");
  return SourceText{p.Take(), std::move(origin)};
}

}  // namespace fsmguard
