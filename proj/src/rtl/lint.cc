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

#include "fsmguard/rtl/lint.h"

#include <algorithm>
#include <set>
#include <string>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace fsmguard {
namespace {

Diagnostic Warning(std::string_view code, std::string message, Span span) {
  return Diagnostic{Severity::kWarning, std::string(code), std::move(message), span};
}

std::string ArmName(const CaseArm& arm) {
  return arm.is_default() ? "default" : absl::StrJoin(arm.labels, "/");
}

void CheckLatches(const FsmAst& ast, std::vector<Diagnostic>* out) {
  const CombinationalBlock& comb = ast.combinational;
  std::vector<std::string> targets;
  auto note_target = [&](const Statement& s) {
    if (!s.is_assignment()) return;
    const std::string& target = s.assignment().target;
    if (target == ast.state_regs.next) return;
    if (std::find(targets.begin(), targets.end(), target) == targets.end()) {
      targets.push_back(target);
    }
  };
  for (const CaseArm& arm : comb.arms) ForEachStatement(arm.body, note_target);

  for (const std::string& target : targets) {
    if (AssignsOnAllPaths(comb.leading, target)) continue;
    std::vector<std::string> missing;
    Span span;
    for (const CaseArm& arm : comb.arms) {
      if (AssignsOnAllPaths(arm.body, target)) continue;
      missing.push_back(ArmName(arm));
      if (!span.valid()) span = arm.span;
    }
    if (missing.empty()) continue;
    const char* what = ast.IsOutput(target) ? "output" : "signal";
    out->push_back(Warning(kLintLatchInference,
                           absl::StrCat(what, " ", target,
                                        " is not assigned on every path of case arm(s) ",
                                        absl::StrJoin(missing, ", "),
                                        "; might cause latch inference"),
                           span));
  }
}

void CheckSensitivity(const FsmAst& ast, std::vector<Diagnostic>* out) {
  const CombinationalBlock& comb = ast.combinational;
  if (comb.star_sensitivity) return;
  std::vector<std::string> read;
  auto add = [&](const std::string& name) {
    if (ast.FindParameter(name) != nullptr) return;
    if (std::find(read.begin(), read.end(), name) == read.end()) read.push_back(name);
  };
  add(comb.case_subject);
  auto visit = [&](const Statement& s) {
    if (s.is_if()) {
      for (const std::string& id : s.if_statement().condition.Identifiers()) add(id);
    } else {
      for (const std::string& id : s.assignment().value.Identifiers()) add(id);
    }
  };
  ForEachStatement(comb.leading, visit);
  for (const CaseArm& arm : comb.arms) ForEachStatement(arm.body, visit);
  std::set<std::string> listed(comb.sensitivity.begin(), comb.sensitivity.end());
  std::vector<std::string> missing;
  for (const std::string& name : read) {
    if (!listed.count(name)) missing.push_back(name);
  }
  if (missing.empty()) return;
  Span span{comb.span.first_line, comb.span.first_line};
  out->push_back(Warning(kLintIncompleteSensitivity,
                         absl::StrCat("sensitivity list is missing ",
                                      absl::StrJoin(missing, ", "), "; use @(*)"),
                         span));
}

}  // namespace

bool AssignsOnAllPaths(const StatementList& list, std::string_view signal) {
  for (const Statement& s : list) {
    if (s.is_assignment()) {
      if (s.assignment().target == signal) return true;
      continue;
    }
    const IfStatement& branch = s.if_statement();
    if (branch.has_else && AssignsOnAllPaths(branch.then_branch, signal) &&
        AssignsOnAllPaths(branch.else_branch, signal)) {
      return true;
    }
  }
  return false;
}

std::vector<Diagnostic> Lint(const FsmAst& ast) {
  std::vector<Diagnostic> out;
  CheckLatches(ast, &out);
  CheckSensitivity(ast, &out);
  if (ast.port_style == PortStyle::kNonAnsi) {
    Span span{ast.span.first_line, ast.span.first_line};
    out.push_back(Warning(kLintObsoletePortStyle,
                          "non-ANSI (Verilog-1995) port declarations; prefer ANSI style",
                          span));
  }
  for (const LintFact& fact : ast.lint_facts) {
    if (fact.kind == LintFact::Kind::kSemicolonAfterEnd) {
      out.push_back(Warning(kLintSemicolonAfterEnd, "semicolon after end", fact.span));
    }
  }
  std::stable_sort(out.begin(), out.end(), [](const Diagnostic& a, const Diagnostic& b) {
    return a.span.first_line < b.span.first_line;
  });
  return out;
}

}  // namespace fsmguard
