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

#include "fsmguard/mitigate/mitigation.h"

#include <algorithm>
#include <map>
#include <set>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "fsmguard/inject/ast_edit.h"
#include "fsmguard/report/json_codec.h"
#include "fsmguard/rtl/emitter.h"
#include "fsmguard/rtl/lint.h"
#include "fsmguard/rtl/parser.h"
#include "fsmguard/rules/rules.h"
#include "fsmguard/stg/extract.h"

namespace fsmguard {
namespace {

bool MentionsIdentifier(const StatementList& list, const std::string& name) {
  bool found = false;
  ForEachStatement(list, [&](const Statement& s) {
    const std::vector<std::string>& tokens =
        s.is_assignment() ? s.assignment().value.tokens : s.if_statement().condition.tokens;
    if (std::find(tokens.begin(), tokens.end(), name) != tokens.end()) found = true;
  });
  return found;
}

absl::StatusOr<std::set<std::string>> FlaggedStates(const FsmAst& ast, RuleId rule) {
  absl::StatusOr<Stg> stg = ExtractStg(ast, {});
  if (!stg.ok()) return stg.status();
  std::vector<RuleViolation> found = rule == RuleId::kStaticDeadlock
                                         ? DetectStaticDeadlock(*stg)
                                         : DetectUnreachableStates(*stg);
  std::set<std::string> out;
  for (const RuleViolation& v : found) out.insert(v.locus.states.begin(), v.locus.states.end());
  return out;
}

}  // namespace

absl::StatusOr<FsmAst> AddDefaultArm(const FsmAst& ast, const std::string& target) {
  if (ast.combinational.HasDefaultArm()) {
    return absl::FailedPreconditionError("design already has a default arm");
  }
  if (ast.FindParameter(target) == nullptr) {
    return absl::InvalidArgumentError(absl::StrCat("unknown state ", target));
  }
  FsmAst out = ast;
  CaseArm arm;
  arm.body = OutputDefaultsForNewArm(ast);
  arm.body.push_back(MakeAssignment(ast.state_regs.next, target));
  out.combinational.arms.push_back(std::move(arm));
  return out;
}

absl::StatusOr<FsmAst> AddExitTransition(const FsmAst& ast, const std::string& state,
                                         const std::string& exit_target,
                                         const std::string& exit_input) {
  if (ast.FindParameter(state) == nullptr) {
    return absl::InvalidArgumentError(absl::StrCat("unknown state ", state));
  }
  if (ast.FindParameter(exit_target) == nullptr) {
    return absl::InvalidArgumentError(absl::StrCat("unknown exit target ", exit_target));
  }
  if (exit_target == state) {
    return absl::InvalidArgumentError("exit target must differ from the state");
  }
  if (!exit_input.empty()) {
    std::vector<std::string> inputs = ast.DataInputs();
    if (std::find(inputs.begin(), inputs.end(), exit_input) == inputs.end()) {
      return absl::InvalidArgumentError(absl::StrCat(exit_input, " is not a data input"));
    }
  }
  FsmAst out = ast;
  const std::string& next = out.state_regs.next;
  CaseArm* own = out.combinational.ArmFor(state);
  if (own == nullptr || own->labels.size() > 1) {
    CaseArm arm;
    arm.labels = {state};
    if (own != nullptr) {
      arm.body = own->body;
      own->labels.erase(std::find(own->labels.begin(), own->labels.end(), state));
    } else {
      arm.body = OutputDefaultsForNewArm(ast);
      arm.body.push_back(MakeAssignment(next, state));
    }
    InsertArm(out, std::move(arm));
    own = out.combinational.ArmFor(state);
  }
  if (!exit_input.empty()) {
    Statement guard;
    IfStatement exit;
    exit.condition = Expr::Identifier(exit_input);
    exit.then_branch = {MakeAssignment(next, exit_target)};
    guard.node = std::move(exit);
    own->body.push_back(std::move(guard));
    return out;
  }
  ForEachStatement(own->body, [&](Statement& s) {
    if (s.is_assignment() && s.assignment().target == next) {
      s.assignment().value = Expr::Identifier(exit_target);
    }
  });
  if (!AssignsOnAllPaths(own->body, next)) own->body.push_back(MakeAssignment(next, exit_target));
  return out;
}

absl::StatusOr<FsmAst> RemoveStaticDeadlock(const FsmAst& ast, const std::string& state,
                                            const std::string& exit_target,
                                            const std::string& exit_input) {
  absl::StatusOr<std::set<std::string>> deadlocked =
      FlaggedStates(ast, RuleId::kStaticDeadlock);
  if (!deadlocked.ok()) return deadlocked.status();
  if (!deadlocked->count(state)) {
    return absl::FailedPreconditionError(absl::StrCat(state, " is not a static deadlock"));
  }
  return AddExitTransition(ast, state, exit_target, exit_input);
}

absl::StatusOr<FsmAst> RemoveUnreachableState(const FsmAst& ast, const std::string& state) {
  if (ast.FindParameter(state) == nullptr) {
    return absl::InvalidArgumentError(absl::StrCat("unknown state ", state));
  }
  if (ast.sequential.reset_target == state) {
    return absl::FailedPreconditionError("cannot remove the reset state");
  }
  absl::StatusOr<std::set<std::string>> unreachable =
      FlaggedStates(ast, RuleId::kUnreachableState);
  if (!unreachable.ok()) return unreachable.status();
  if (!unreachable->count(state)) {
    return absl::FailedPreconditionError(absl::StrCat(state, " is reachable"));
  }
  FsmAst out = ast;
  std::vector<CaseArm>& arms = out.combinational.arms;
  for (auto it = arms.begin(); it != arms.end();) {
    auto label = std::find(it->labels.begin(), it->labels.end(), state);
    if (label == it->labels.end()) {
      ++it;
      continue;
    }
    it->labels.erase(label);
    it = it->labels.empty() ? arms.erase(it) : it + 1;
  }
  bool referenced = MentionsIdentifier(out.combinational.leading, state);
  for (const CaseArm& arm : arms) referenced = referenced || MentionsIdentifier(arm.body, state);
  for (const ContinuousAssign& a : out.assigns) {
    referenced = referenced || std::find(a.value.tokens.begin(), a.value.tokens.end(), state) !=
                                   a.value.tokens.end();
  }
  if (referenced) {
    return absl::FailedPreconditionError(
        absl::StrCat(state, " is still named by another part of the design"));
  }
  out.parameters.erase(std::find_if(out.parameters.begin(), out.parameters.end(),
                                    [&](const Parameter& p) { return p.name == state; }));
  std::vector<std::string>& annotations = out.protected_annotations;
  annotations.erase(std::remove(annotations.begin(), annotations.end(), state),
                    annotations.end());
  return out;
}

absl::StatusOr<FsmAst> UniquifyEncodings(const FsmAst& ast) {
  FsmAst out = ast;
  std::set<uint64_t> used;
  for (const Parameter& p : ast.parameters) used.insert(p.value.value());
  int width = ast.state_regs.width;
  uint64_t space = uint64_t{1} << width;
  std::set<uint64_t> seen;
  bool any = false;
  for (Parameter& p : out.parameters) {
    if (seen.insert(p.value.value()).second) continue;
    any = true;
    uint64_t code = 0;
    while (code < space && used.count(code)) ++code;
    if (code == space) {
      return absl::FailedPreconditionError(
          "not enough unused codes to give every state its own encoding");
    }
    used.insert(code);
    seen.insert(code);
    p.value = Encoding(width, code);
  }
  if (!any) return absl::FailedPreconditionError("design has no duplicate encodings");
  return out;
}

namespace {

using KeyCounts = std::map<std::pair<RuleId, std::vector<std::string>>, int>;

KeyCounts CountKeys(const CheckReport& report) {
  KeyCounts out;
  for (const RuleViolation& v : report.violations) ++out[v.Key()];
  return out;
}

class Mitigator {
 public:
  Mitigator(const MitigationConfig& config, std::vector<std::string> protected_names,
            MitigationOutcome& outcome)
      : config_(config), protected_(std::move(protected_names)), outcome_(outcome) {}

  CheckReport Check(const FsmAst& ast) const {
    return RunAllChecks(EmitVerilog(ast), protected_, config_.rules);
  }

  // Adopts `candidate` when it reduces the violations of `rules` and adds
  // no violation the current design lacks.
  bool Try(FsmAst& current, CheckReport& report, const absl::StatusOr<FsmAst>& candidate,
           const std::vector<RuleId>& rules, const std::string& what) {
    if (!candidate.ok()) {
      outcome_.steps.push_back(absl::StrCat("skipped ", what, ": ", candidate.status().message()));
      return false;
    }
    CheckReport after = Check(*candidate);
    auto count = [&](const CheckReport& r) {
      size_t n = 0;
      for (RuleId rule : rules) n += r.Count(rule);
      return n;
    };
    bool regressed = !after.parsed || !after.stg.has_value();
    if (!regressed) {
      KeyCounts before_keys = CountKeys(report);
      for (const auto& [key, n] : CountKeys(after)) {
        auto it = before_keys.find(key);
        if (it == before_keys.end() || it->second < n) regressed = true;
      }
    }
    if (regressed || count(after) >= count(report)) {
      outcome_.steps.push_back(absl::StrCat("reverted ", what));
      return false;
    }
    current = *candidate;
    report = std::move(after);
    outcome_.steps.push_back(absl::StrCat("applied ", what));
    return true;
  }

  std::string Fallback(const FsmAst& ast, const std::string& avoid) const {
    std::string target =
        config_.fallback_state.empty() ? ast.sequential.reset_target : config_.fallback_state;
    if (target != avoid) return target;
    for (const Parameter& p : ast.parameters) {
      if (p.name != avoid) return p.name;
    }
    return target;
  }

  bool Round(FsmAst& ast, CheckReport& report) {
    bool changed = false;
    std::set<std::string> protected_set(protected_.begin(), protected_.end());

    if (report.Count(RuleId::kDuplicateEncoding) > 0) {
      changed |= Try(ast, report, UniquifyEncodings(ast), {RuleId::kDuplicateEncoding},
                     "uniquify encodings");
    }

    for (bool progress = true; progress;) {
      progress = false;
      std::vector<RuleViolation> pending = report.violations;
      for (const RuleViolation& v : pending) {
        if (v.rule != RuleId::kUnreachableState) continue;
        const std::string& state = v.locus.states[0];
        if (protected_set.count(state)) continue;
        if (Try(ast, report, RemoveUnreachableState(ast, state), {RuleId::kUnreachableState},
                absl::StrCat("remove unreachable state ", state))) {
          progress = changed = true;
          break;
        }
      }
    }

    for (bool progress = true; progress;) {
      progress = false;
      std::vector<RuleViolation> pending = report.violations;
      for (const RuleViolation& v : pending) {
        if (v.rule != RuleId::kStaticDeadlock && v.rule != RuleId::kTrapLoop) continue;
        for (const std::string& state : v.locus.states) {
          std::string target = Fallback(ast, state);
          if (Try(ast, report, AddExitTransition(ast, state, target, config_.exit_input),
                  {RuleId::kStaticDeadlock, RuleId::kTrapLoop},
                  absl::StrCat("add exit ", state, " -> ", target))) {
            progress = changed = true;
            break;
          }
        }
        if (progress) break;
      }
    }

    if (report.Count(RuleId::kMissingDefault) > 0) {
      std::string target = Fallback(ast, "");
      changed |= Try(ast, report, AddDefaultArm(ast, target), {RuleId::kMissingDefault},
                     absl::StrCat("add default arm -> ", target));
    }

    if (report.Count(RuleId::kHdNotOne) > 0 && report.stg.has_value()) {
      absl::StatusOr<EncodingAssignment> assignment =
          ReencodeStates(*report.stg, config_.reencode);
      absl::StatusOr<FsmAst> candidate =
          assignment.ok() ? absl::StatusOr<FsmAst>(ApplyEncoding(ast, *assignment))
                          : absl::StatusOr<FsmAst>(assignment.status());
      changed |= Try(ast, report, candidate, {RuleId::kHdNotOne}, "re-encode states");
    }
    return changed;
  }

 private:
  const MitigationConfig& config_;
  std::vector<std::string> protected_;
  MitigationOutcome& outcome_;
};

}  // namespace

MitigationOutcome Mitigate(const SourceText& src, const CheckReport& report,
                           const MitigationConfig& config) {
  MitigationOutcome outcome;
  outcome.design = src;
  ParseResult parsed = ParseSource(src);
  if (!parsed.ok()) {
    outcome.residual = report.violations;
    outcome.stg_preserved = false;
    outcome.steps.push_back("design does not parse; nothing applied");
    return outcome;
  }
  std::vector<std::string> protected_names = report.protected_states;
  for (const std::string& name : config.protected_names) {
    if (std::find(protected_names.begin(), protected_names.end(), name) ==
        protected_names.end()) {
      protected_names.push_back(name);
    }
  }
  Mitigator mitigator(config, protected_names, outcome);
  FsmAst ast = *parsed.ast;
  CheckReport initial = mitigator.Check(ast);
  CheckReport current = initial;
  bool any_change = false;
  while (outcome.rounds < config.max_rounds && current.HasViolations()) {
    ++outcome.rounds;
    if (!mitigator.Round(ast, current)) break;
    any_change = true;
  }
  if (any_change) outcome.design = EmitVerilog(ast, src.origin);
  std::vector<RuleId> before = initial.ViolatedRules();
  std::vector<RuleId> after = current.ViolatedRules();
  for (RuleId rule : before) {
    if (std::find(after.begin(), after.end(), rule) == after.end()) outcome.fixed.push_back(rule);
  }
  outcome.residual = current.violations;
  outcome.stg_preserved = initial.stg.has_value() && current.stg.has_value() &&
                          StgIsomorphicModuloEncoding(*initial.stg, *current.stg);
  return outcome;
}

std::string MitigationOutcomeToJson(const MitigationOutcome& outcome) {
  OrderedJson j;
  j["schema_version"] = MitigationOutcome::kSchemaVersion;
  j["design"] = outcome.design.origin;
  OrderedJson fixed = OrderedJson::array();
  for (RuleId rule : outcome.fixed) fixed.push_back(RuleIdName(rule));
  j["fixed"] = fixed;
  OrderedJson residual = OrderedJson::array();
  for (const RuleViolation& v : outcome.residual) residual.push_back(ViolationToJson(v));
  j["residual"] = residual;
  j["stg_preserved"] = outcome.stg_preserved;
  j["rounds"] = outcome.rounds;
  j["steps"] = outcome.steps;
  j["source"] = outcome.design.content;
  return j.dump(2) + "\n";
}

}  // namespace fsmguard
