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

#include "fsmguard/inject/ast_edit.h"

#include <algorithm>
#include <cctype>
#include <set>

#include "absl/status/statusor.h"
#include "absl/strings/str_cat.h"
#include "fsmguard/rtl/lint.h"

namespace fsmguard {
namespace {

struct Location {
  StatementList* list = nullptr;
  size_t index = 0;
};

bool LocateIn(StatementList& list, int target, int& counter, Location& out) {
  for (size_t i = 0; i < list.size(); ++i) {
    if (counter++ == target) {
      out = Location{&list, i};
      return true;
    }
    if (list[i].is_if()) {
      IfStatement& s = list[i].if_statement();
      if (LocateIn(s.then_branch, target, counter, out)) return true;
      if (LocateIn(s.else_branch, target, counter, out)) return true;
    }
  }
  return false;
}

std::optional<Location> Locate(FsmAst& ast, StatementRef ref) {
  if (ref.arm < 0 || ref.arm >= static_cast<int>(ast.combinational.arms.size())) {
    return std::nullopt;
  }
  Location loc;
  int counter = 0;
  if (!LocateIn(ast.combinational.arms[ref.arm].body, ref.preorder, counter, loc)) {
    return std::nullopt;
  }
  return loc;
}

bool HasLowercase(std::string_view s) {
  return std::any_of(s.begin(), s.end(),
                     [](char c) { return std::islower(static_cast<unsigned char>(c)); });
}

int SubtreeSize(const Statement& statement) {
  if (!statement.is_if()) return 1;
  int size = 1;
  for (const Statement& s : statement.if_statement().then_branch) size += SubtreeSize(s);
  for (const Statement& s : statement.if_statement().else_branch) size += SubtreeSize(s);
  return size;
}

}  // namespace

const Statement* Resolve(const FsmAst& ast, StatementRef ref) {
  std::optional<Location> loc = Locate(const_cast<FsmAst&>(ast), ref);
  if (!loc) return nullptr;
  return &(*loc->list)[loc->index];
}

std::vector<Encoding> LowestUnusedEncodings(const FsmAst& ast, size_t count) {
  int width = ast.state_regs.width;
  std::set<uint64_t> used;
  for (const Parameter& p : ast.parameters) used.insert(p.value.value());
  std::vector<Encoding> out;
  uint64_t limit = width >= 63 ? ~uint64_t{0} : (uint64_t{1} << width);
  for (uint64_t v = 0; v < limit && out.size() < count; ++v) {
    if (!used.count(v)) out.emplace_back(width, v);
  }
  return out;
}

std::string FreshStateName(const FsmAst& ast, std::string_view upper_name) {
  bool lower = std::any_of(ast.parameters.begin(), ast.parameters.end(),
                           [](const Parameter& p) { return HasLowercase(p.name); });
  std::string base(upper_name);
  if (lower) {
    for (char& c : base) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  std::vector<std::string> taken = ast.DeclaredIdentifiers();
  taken.push_back(ast.state_regs.current);
  taken.push_back(ast.state_regs.next);
  auto free = [&](const std::string& name) {
    return std::find(taken.begin(), taken.end(), name) == taken.end();
  };
  if (free(base)) return base;
  for (int i = 1;; ++i) {
    std::string candidate = absl::StrCat(base, "_", i);
    if (free(candidate)) return candidate;
  }
}

void AddStateParameter(FsmAst& ast, std::string name, Encoding code) {
  Parameter p;
  p.name = std::move(name);
  p.value = code;
  p.from_localparam = !ast.parameters.empty() && ast.parameters.back().from_localparam;
  ast.parameters.push_back(std::move(p));
}

Statement MakeAssignment(std::string target, std::string value) {
  Statement s;
  s.node = Assignment{std::move(target), Expr{{std::move(value)}}, false};
  return s;
}

StatementList OutputDefaultsForNewArm(const FsmAst& ast) {
  const std::string& next = ast.state_regs.next;
  std::vector<std::string> signals;
  for (const CaseArm& arm : ast.combinational.arms) {
    ForEachStatement(arm.body, [&](const Statement& s) {
      if (!s.is_assignment()) return;
      const std::string& target = s.assignment().target;
      if (target == next) return;
      if (std::find(signals.begin(), signals.end(), target) == signals.end()) {
        signals.push_back(target);
      }
    });
  }
  const CaseArm* fallback = ast.combinational.DefaultArm();
  StatementList out;
  for (const std::string& signal : signals) {
    if (AssignsOnAllPaths(ast.combinational.leading, signal)) continue;
    Statement assignment = MakeAssignment(signal, "0");
    if (fallback != nullptr) {
      for (const Statement& s : fallback->body) {
        if (s.is_assignment() && s.assignment().target == signal) {
          assignment.assignment().value = s.assignment().value;
          break;
        }
      }
    }
    out.push_back(std::move(assignment));
  }
  return out;
}

int InsertArm(FsmAst& ast, CaseArm arm) {
  std::vector<CaseArm>& arms = ast.combinational.arms;
  auto pos = std::find_if(arms.begin(), arms.end(), [](const CaseArm& a) { return a.is_default(); });
  int index = static_cast<int>(pos - arms.begin());
  arms.insert(pos, std::move(arm));
  return index;
}

CaseArm MakeStateArm(const FsmAst& ast, const std::string& state, const std::string& next_state) {
  CaseArm arm;
  arm.labels = {state};
  arm.body = OutputDefaultsForNewArm(ast);
  arm.body.push_back(MakeAssignment(ast.state_regs.next, next_state));
  return arm;
}

std::vector<BranchEdit> BranchEdits(const FsmAst& ast, const std::string& state) {
  std::vector<BranchEdit> out;
  const std::vector<CaseArm>& arms = ast.combinational.arms;
  for (size_t a = 0; a < arms.size(); ++a) {
    if (arms[a].labels.size() != 1 || arms[a].labels[0] != state) continue;
    const std::string& next = ast.state_regs.next;
    int index = 0;
    ForEachStatement(arms[a].body, [&](const Statement& s) {
      StatementRef ref{static_cast<int>(a), index++};
      if (s.is_assignment() && s.assignment().target == next) {
        out.push_back(BranchEdit{BranchEdit::Kind::kRedirect, state, ref});
      } else if (s.is_if() && !s.if_statement().has_else &&
                 AssignsOnAllPaths(s.if_statement().then_branch, next)) {
        out.push_back(BranchEdit{BranchEdit::Kind::kAddElse, state, ref});
      }
    });
  }
  return out;
}

absl::StatusOr<AppliedEdit> ApplyBranchEdit(FsmAst& ast, const BranchEdit& edit,
                                            const std::string& new_target) {
  std::optional<Location> loc = Locate(ast, edit.site);
  if (!loc) return absl::NotFoundError("edit site does not exist");
  const std::string& next = ast.state_regs.next;
  Statement& site = (*loc->list)[loc->index];
  AppliedEdit applied;
  applied.edited = edit.site;
  if (edit.kind == BranchEdit::Kind::kRedirect) {
    if (!site.is_assignment() || site.assignment().target != next) {
      return absl::FailedPreconditionError("redirect site is not a next-state assignment");
    }
    site.assignment().value = Expr::Identifier(new_target);
    return applied;
  }
  if (!site.is_if() || site.if_statement().has_else) {
    return absl::FailedPreconditionError("add-else site is not an else-less if");
  }
  site.if_statement().has_else = true;
  site.if_statement().else_branch = {MakeAssignment(next, new_target)};
  // Earlier sibling writes are now overwritten on every path.
  StatementList& list = *loc->list;
  std::vector<size_t> dead;
  for (size_t i = 0; i < loc->index; ++i) {
    if (list[i].is_assignment() && list[i].assignment().target == next) dead.push_back(i);
  }
  if (dead.empty()) return applied;
  // Pre-order positions of the earlier siblings, counted back from the site.
  std::vector<int> pre_of(loc->index, 0);
  int p = edit.site.preorder;
  for (size_t i = loc->index; i-- > 0;) {
    p -= SubtreeSize(list[i]);
    pre_of[i] = p;
  }
  for (auto it = dead.rbegin(); it != dead.rend(); ++it) {
    applied.removed.insert(applied.removed.begin(), StatementRef{edit.site.arm, pre_of[*it]});
    list.erase(list.begin() + static_cast<std::ptrdiff_t>(*it));
  }
  applied.edited.preorder -= static_cast<int>(dead.size());
  return applied;
}

}  // namespace fsmguard
