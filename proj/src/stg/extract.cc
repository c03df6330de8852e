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

#include "fsmguard/stg/extract.h"

#include <algorithm>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace fsmguard {
namespace {

// An assignment to the next-state register.
struct Site {
  const Statement* statement = nullptr;
  std::vector<GuardTerm> terms;
  bool constant_false = false;
};

// Sentinel member of a reaching set: the path has not written the register.
constexpr int kNoWrite = -1;

class ArmAnalyzer {
 public:
  explicit ArmAnalyzer(const std::string& next_reg) : next_reg_(next_reg) {}

  // Returns the set of sites (indices into sites()) that are the last write
  // on some path, plus kNoWrite if a path writes nothing.
  std::set<int> Run(const StatementList& body) {
    std::vector<GuardTerm> terms;
    return Walk(body, {kNoWrite}, terms, false);
  }

  const std::vector<Site>& sites() const { return sites_; }

 private:
  std::set<int> Walk(const StatementList& list, std::set<int> reaching,
                     std::vector<GuardTerm>& terms, bool constant_false) {
    for (const Statement& s : list) {
      if (s.is_assignment()) {
        if (s.assignment().target != next_reg_) continue;
        sites_.push_back(Site{&s, terms, constant_false});
        reaching = {static_cast<int>(sites_.size()) - 1};
        continue;
      }
      const IfStatement& branch = s.if_statement();
      std::optional<bool> folded = branch.condition.ConstantValue();
      terms.push_back(GuardTerm{branch.condition, false});
      std::set<int> then_out =
          Walk(branch.then_branch, reaching, terms, constant_false || folded == false);
      terms.back().negated = true;
      std::set<int> else_out =
          branch.has_else
              ? Walk(branch.else_branch, reaching, terms, constant_false || folded == true)
              : reaching;
      terms.pop_back();
      reaching = then_out;
      reaching.insert(else_out.begin(), else_out.end());
    }
    return reaching;
  }

  const std::string& next_reg_;
  std::vector<Site> sites_;
};

}  // namespace

absl::StatusOr<Stg> ExtractStg(const FsmAst& ast, const std::vector<std::string>& protected_names) {
  Stg stg;
  stg.width = ast.state_regs.width;
  const CombinationalBlock& comb = ast.combinational;
  for (const Parameter& p : ast.parameters) {
    State state;
    state.name = p.name;
    state.encoding = p.value;
    state.declared_span = p.span;
    state.has_arm = comb.ArmFor(p.name) != nullptr;
    stg.states.push_back(std::move(state));
  }
  if (stg.states.empty()) return absl::InvalidArgumentError("design declares no states");

  std::vector<std::string> wanted = protected_names;
  wanted.insert(wanted.end(), ast.protected_annotations.begin(), ast.protected_annotations.end());
  for (const std::string& name : wanted) {
    std::optional<int> index = stg.IndexOf(name);
    if (!index) {
      return absl::InvalidArgumentError(
          absl::StrCat("protected state ", name, " is not a declared state"));
    }
    stg.states[*index].is_protected = true;
  }

  std::optional<int> reset = stg.IndexOf(ast.sequential.reset_target);
  if (!reset) {
    return absl::InvalidArgumentError(
        absl::StrCat("reset target ", ast.sequential.reset_target, " is not a declared state"));
  }
  stg.reset_state = *reset;

  const std::string& next_reg = ast.state_regs.next;
  const std::string& current_reg = ast.state_regs.current;

  // Leading default: the last assignment to the next-state register before
  // the case statement.
  std::optional<std::string> leading_target;
  Span leading_span;
  ForEachStatement(comb.leading, [&](const Statement& s) {
    if (s.is_assignment() && s.assignment().target == next_reg) {
      leading_target = s.assignment().value.Text();
      leading_span = s.span;
    }
  });

  auto resolve = [&](const std::string& value, int from) -> absl::StatusOr<int> {
    if (value == current_reg) return from;
    std::optional<int> index = stg.IndexOf(value);
    if (!index) {
      return absl::InvalidArgumentError(
          absl::StrCat("next-state value ", value, " is not a declared state"));
    }
    return *index;
  };

  auto add_edges = [&](int from, const StatementList& body, Span arm_span) -> absl::Status {
    ArmAnalyzer analyzer(next_reg);
    std::set<int> live = analyzer.Run(body);
    const std::vector<Site>& sites = analyzer.sites();
    for (size_t i = 0; i < sites.size(); ++i) {
      if (!live.count(static_cast<int>(i))) continue;
      const Site& site = sites[i];
      Transition t;
      t.from = from;
      absl::StatusOr<int> to = resolve(site.statement->assignment().value.Text(), from);
      if (!to.ok()) return to.status();
      t.to = *to;
      t.guard.kind = site.terms.empty() ? GuardKind::kAlways : GuardKind::kExpression;
      t.guard.terms = site.terms;
      t.guard.constant_false = site.constant_false;
      t.span = site.statement->span;
      stg.transitions.push_back(std::move(t));
    }
    if (live.count(kNoWrite)) {
      Transition t;
      t.from = from;
      if (leading_target) {
        absl::StatusOr<int> to = resolve(*leading_target, from);
        if (!to.ok()) return to.status();
        t.to = *to;
        t.guard.kind = GuardKind::kFallthrough;
        t.span = leading_span;
      } else {
        t.to = from;
        t.guard.kind = GuardKind::kImplicitHold;
        t.span = arm_span;
      }
      stg.transitions.push_back(std::move(t));
    }
    return absl::OkStatus();
  };

  for (const CaseArm& arm : comb.arms) {
    if (arm.is_default()) continue;
    for (const std::string& label : arm.labels) {
      std::optional<int> from = stg.IndexOf(label);
      if (!from) {
        return absl::InvalidArgumentError(
            absl::StrCat("case arm on undeclared state ", label));
      }
      absl::Status status = add_edges(*from, arm.body, arm.span);
      if (!status.ok()) return status;
    }
  }

  const CaseArm* default_arm = comb.DefaultArm();
  for (size_t i = 0; i < stg.states.size(); ++i) {
    if (stg.states[i].has_arm) continue;
    StatementList empty;
    const StatementList& body = default_arm ? default_arm->body : empty;
    Span span = default_arm ? default_arm->span : stg.states[i].declared_span;
    absl::Status status = add_edges(static_cast<int>(i), body, span);
    if (!status.ok()) return status;
  }

  if (default_arm != nullptr) {
    stg.has_default_arm = true;
    ArmAnalyzer analyzer(next_reg);
    std::set<int> live = analyzer.Run(default_arm->body);
    for (size_t i = 0; i < analyzer.sites().size(); ++i) {
      if (!live.count(static_cast<int>(i))) continue;
      const std::string& value = analyzer.sites()[i].statement->assignment().value.Text();
      if (std::optional<int> index = stg.IndexOf(value)) {
        stg.default_arm_target = *index;
        break;
      }
    }
    if (!stg.default_arm_target && live.count(kNoWrite) && leading_target) {
      stg.default_arm_target = stg.IndexOf(*leading_target);
    }
  }
  return stg;
}

}  // namespace fsmguard
