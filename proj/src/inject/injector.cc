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

#include "fsmguard/inject/injector.h"

#include <algorithm>
#include <set>
#include <utility>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "fsmguard/inject/ast_edit.h"
#include "fsmguard/rtl/emitter.h"
#include "fsmguard/rtl/parser.h"
#include "fsmguard/rules/check_report.h"
#include "fsmguard/stg/stg.h"
#include "fsmguard/util/seeds.h"

namespace fsmguard {
namespace {

using ViolationKey = std::pair<RuleId, std::vector<std::string>>;

struct Baseline {
  CheckReport report;
  std::set<ViolationKey> keys;
};

absl::StatusOr<Baseline> CheckBase(const FsmAst& ast) {
  Baseline base;
  base.report = CheckAst(ast, {}, RuleConfig{}, ast.module_name);
  if (!base.report.stg.has_value()) {
    return absl::FailedPreconditionError("base design has no extractable state graph");
  }
  for (const RuleViolation& v : base.report.violations) base.keys.insert(v.Key());
  return base;
}

// Emits `edited` and returns the text iff it raises `rule` (exactly once
// when `exactly_one`) and nothing else new.
std::optional<SourceText> Accept(const Baseline& base, const FsmAst& edited, RuleId rule,
                                 bool exactly_one) {
  SourceText text = EmitVerilog(edited);
  CheckReport after = RunAllChecks(text, {});
  if (!after.parsed) return std::nullopt;
  int fresh = 0;
  for (const RuleViolation& v : after.violations) {
    if (base.keys.count(v.Key())) continue;
    if (v.rule != rule) return std::nullopt;
    ++fresh;
  }
  if (fresh == 0 || (exactly_one && fresh != 1)) return std::nullopt;
  return text;
}

// Nodes whose emitted lines make up a plan's spans.
struct Marks {
  std::vector<std::string> parameters;
  std::vector<std::vector<std::string>> arms;  // by label list
  std::vector<StatementRef> statements;
  bool empty() const { return parameters.empty() && arms.empty() && statements.empty(); }
};

absl::StatusOr<std::vector<Span>> SpansOf(const FsmAst& ast, const Marks& marks) {
  std::vector<Span> spans;
  for (const std::string& name : marks.parameters) {
    const Parameter* p = ast.FindParameter(name);
    if (p == nullptr) return absl::InternalError(absl::StrCat("lost parameter ", name));
    spans.push_back(p->span);
  }
  for (const std::vector<std::string>& labels : marks.arms) {
    auto it = std::find_if(ast.combinational.arms.begin(), ast.combinational.arms.end(),
                           [&](const CaseArm& a) { return a.labels == labels; });
    if (it == ast.combinational.arms.end()) return absl::InternalError("lost case arm");
    spans.push_back(it->span);
  }
  for (const StatementRef& ref : marks.statements) {
    const Statement* s = Resolve(ast, ref);
    if (s == nullptr) return absl::InternalError("lost statement");
    spans.push_back(s->span);
  }
  std::sort(spans.begin(), spans.end(), [](const Span& a, const Span& b) {
    return a.first_line < b.first_line;
  });
  return spans;
}

absl::StatusOr<InjectionResult> Finish(const FsmAst& base, SourceText text, InjectionPlan plan,
                                       const Marks& added, const Marks& removed) {
  ParseResult reparsed = ParseSource(text);
  if (!reparsed.ok()) return absl::InternalError("injected design does not re-parse");
  absl::StatusOr<std::vector<Span>> modified = SpansOf(*reparsed.ast, added);
  if (!modified.ok()) return modified.status();
  plan.modified_spans = *std::move(modified);
  if (!removed.empty()) {
    ParseResult base_emitted = ParseSource(EmitVerilog(base));
    if (!base_emitted.ok()) return absl::InternalError("base design does not re-parse");
    absl::StatusOr<std::vector<Span>> gone = SpansOf(*base_emitted.ast, removed);
    if (!gone.ok()) return gone.status();
    plan.removed_spans = *std::move(gone);
  }
  return InjectionResult{*std::move(reparsed.ast), std::move(text), std::move(plan)};
}

int ArmIndexByLabels(const FsmAst& ast, const std::vector<std::string>& labels) {
  for (size_t i = 0; i < ast.combinational.arms.size(); ++i) {
    if (ast.combinational.arms[i].labels == labels) return static_cast<int>(i);
  }
  return -1;
}

struct RedirectCandidate {
  std::string state;
  bool add_else = false;
  FsmAst ast;
  SourceText text;
  AppliedEdit applied;
};

// Shared by the deadlock and trap injections: adds `new_arms` (and their
// parameters) and redirects one branch of an eligible state to `entry`.
absl::StatusOr<InjectionResult> InjectViaRedirect(
    const FsmAst& ast, uint64_t seed, const InjectOptions& options, VulnClass vuln,
    const std::vector<std::pair<std::string, Encoding>>& new_states,
    const std::vector<std::pair<std::string, std::string>>& new_arms, const std::string& entry) {
  absl::StatusOr<Baseline> base = CheckBase(ast);
  if (!base.ok()) return base.status();
  const Stg& stg = *base->report.stg;
  std::set<int> reachable = ReachableStates(stg);

  std::vector<std::string> eligible;
  for (size_t i = 0; i < stg.states.size(); ++i) {
    const State& s = stg.states[i];
    if (s.is_protected || !reachable.count(static_cast<int>(i))) continue;
    if (BranchEdits(ast, s.name).empty()) continue;
    eligible.push_back(s.name);
  }
  if (options.target_state) {
    if (std::find(eligible.begin(), eligible.end(), *options.target_state) == eligible.end()) {
      return absl::InvalidArgumentError(absl::StrCat(
          "state ", *options.target_state,
          " is not an unprotected reachable state with a branch of its own"));
    }
    eligible = {*options.target_state};
  }

  std::vector<std::string> states_with_candidates;
  std::vector<RedirectCandidate> candidates;
  for (const std::string& state : eligible) {
    bool any = false;
    for (const BranchEdit& edit : BranchEdits(ast, state)) {
      FsmAst edited = ast;
      absl::StatusOr<AppliedEdit> applied = ApplyBranchEdit(edited, edit, entry);
      if (!applied.ok()) continue;
      for (const auto& [name, code] : new_states) AddStateParameter(edited, name, code);
      for (const auto& [name, next] : new_arms) InsertArm(edited, MakeStateArm(ast, name, next));
      applied->edited.arm = ArmIndexByLabels(edited, {state});
      std::optional<SourceText> text = Accept(*base, edited, MatchingRule(vuln), true);
      if (!text) continue;
      candidates.push_back(RedirectCandidate{state, edit.kind == BranchEdit::Kind::kAddElse,
                                             std::move(edited), *std::move(text), *applied});
      any = true;
    }
    if (any) states_with_candidates.push_back(state);
  }
  if (candidates.empty()) {
    return absl::FailedPreconditionError(absl::StrCat(
        "no branch can be redirected to inject ", VulnClassName(vuln),
        " without raising other violations"));
  }

  SeededPicker picker(seed);
  const std::string& state = states_with_candidates[picker.Pick(states_with_candidates.size())];
  std::vector<const RedirectCandidate*> pool;
  bool have_else = std::any_of(candidates.begin(), candidates.end(), [&](const auto& c) {
    return c.state == state && c.add_else;
  });
  for (const RedirectCandidate& c : candidates) {
    if (c.state == state && c.add_else == have_else) pool.push_back(&c);
  }
  const RedirectCandidate& chosen = *pool[picker.Pick(pool.size())];

  InjectionPlan plan;
  plan.vuln = vuln;
  plan.seed = seed;
  plan.target_state = chosen.state;
  Marks added;
  for (const auto& [name, code] : new_states) {
    plan.added_states.push_back(name);
    added.parameters.push_back(name);
  }
  for (const auto& arm : new_arms) added.arms.push_back({arm.first});
  added.statements.push_back(chosen.applied.edited);
  Marks removed;
  removed.statements = chosen.applied.removed;

  std::string codes;
  for (const auto& [name, code] : new_states) {
    absl::StrAppend(&codes, codes.empty() ? "" : ", ", name, " = ", code.ToLiteral());
  }
  plan.notes = absl::StrCat(chosen.state, (chosen.add_else ? " gains an else branch into "
                                                            : " has a branch redirected into "),
                            entry, "; new states: ", codes);
  return Finish(ast, chosen.text, std::move(plan), added, removed);
}

}  // namespace

absl::StatusOr<InjectionResult> InjectStaticDeadlock(const FsmAst& ast, uint64_t seed,
                                                     const InjectOptions& options) {
  absl::StatusOr<Baseline> base = CheckBase(ast);
  if (!base.ok()) return base.status();
  if (base->report.Count(RuleId::kStaticDeadlock) > 0) {
    return absl::FailedPreconditionError("design already has a static deadlock");
  }
  std::vector<Encoding> codes = LowestUnusedEncodings(ast, 1);
  if (codes.empty()) {
    return absl::FailedPreconditionError("no unused encoding left for the deadlock state");
  }
  std::string name = FreshStateName(ast, "DEADLOCK_STATE");
  return InjectViaRedirect(ast, seed, options, VulnClass::kStaticDeadlock, {{name, codes[0]}},
                           {{name, name}}, name);
}

absl::StatusOr<InjectionResult> InjectTrapLoop(const FsmAst& ast, uint64_t seed,
                                               const InjectOptions& options) {
  std::vector<Encoding> codes = LowestUnusedEncodings(ast, 2);
  if (codes.size() < 2) {
    return absl::FailedPreconditionError("a trap loop needs two unused encodings");
  }
  std::string a = FreshStateName(ast, "TRAP_STATE_A");
  FsmAst reserved = ast;
  AddStateParameter(reserved, a, codes[0]);
  std::string b = FreshStateName(reserved, "TRAP_STATE_B");
  return InjectViaRedirect(ast, seed, options, VulnClass::kCwe835Trap,
                           {{a, codes[0]}, {b, codes[1]}}, {{a, b}, {b, a}}, a);
}

absl::StatusOr<InjectionResult> InjectDuplicateEncoding(const FsmAst& ast, uint64_t seed,
                                                        const InjectOptions& options) {
  if (ast.parameters.size() < 2) {
    return absl::FailedPreconditionError("duplicate encoding needs at least two states");
  }
  absl::StatusOr<Baseline> base = CheckBase(ast);
  if (!base.ok()) return base.status();
  for (const std::optional<std::string>* name : {&options.source_state, &options.target_state}) {
    if (*name && ast.FindParameter(**name) == nullptr) {
      return absl::InvalidArgumentError(absl::StrCat("unknown state ", **name));
    }
  }

  struct Candidate {
    std::string source, target;
    SourceText text;
  };
  std::vector<Candidate> candidates;
  for (const Parameter& source : ast.parameters) {
    if (options.source_state && source.name != *options.source_state) continue;
    for (const Parameter& target : ast.parameters) {
      if (target.name == source.name) continue;
      if (options.target_state && target.name != *options.target_state) continue;
      if (target.value == source.value) continue;
      FsmAst edited = ast;
      edited.FindParameter(target.name)->value = source.value;
      std::optional<SourceText> text = Accept(*base, edited, RuleId::kDuplicateEncoding, false);
      if (text) candidates.push_back(Candidate{source.name, target.name, *std::move(text)});
    }
  }
  if (candidates.empty()) {
    return absl::FailedPreconditionError(
        "no state pair can share an encoding without raising other violations");
  }
  SeededPicker picker(seed);
  const Candidate& chosen = candidates[picker.Pick(candidates.size())];
  InjectionPlan plan;
  plan.vuln = VulnClass::kDuplicateEncoding;
  plan.seed = seed;
  plan.target_state = chosen.target;
  plan.notes = absl::StrCat(chosen.target, " now shares ",
                            ast.FindParameter(chosen.source)->value.ToLiteral(), " with ",
                            chosen.source);
  Marks added;
  added.parameters.push_back(chosen.target);
  return Finish(ast, chosen.text, std::move(plan), added, {});
}

absl::StatusOr<InjectionResult> InjectUnreachableState(const FsmAst& ast, uint64_t seed,
                                                       const InjectOptions& options) {
  absl::StatusOr<Baseline> base = CheckBase(ast);
  if (!base.ok()) return base.status();
  std::vector<Encoding> codes = LowestUnusedEncodings(ast, 1);
  if (codes.empty()) {
    return absl::FailedPreconditionError("no unused encoding left for the unreachable state");
  }
  if (options.target_state && ast.FindParameter(*options.target_state) == nullptr) {
    return absl::InvalidArgumentError(absl::StrCat("unknown state ", *options.target_state));
  }
  std::string name = FreshStateName(ast, "ORPHAN_STATE");

  struct Candidate {
    std::string exit;
    SourceText text;
  };
  std::vector<Candidate> candidates;
  for (const Parameter& p : ast.parameters) {
    if (options.target_state && p.name != *options.target_state) continue;
    FsmAst edited = ast;
    AddStateParameter(edited, name, codes[0]);
    InsertArm(edited, MakeStateArm(ast, name, p.name));
    std::optional<SourceText> text = Accept(*base, edited, RuleId::kUnreachableState, true);
    if (text) candidates.push_back(Candidate{p.name, *std::move(text)});
  }
  if (candidates.empty()) {
    return absl::FailedPreconditionError(
        "no exit target yields an unreachable state without other violations");
  }
  SeededPicker picker(seed);
  const Candidate& chosen = candidates[picker.Pick(candidates.size())];
  InjectionPlan plan;
  plan.vuln = VulnClass::kUnreachableState;
  plan.seed = seed;
  plan.target_state = chosen.exit;
  plan.added_states = {name};
  plan.notes = absl::StrCat(name, " = ", codes[0].ToLiteral(), " exits to ", chosen.exit,
                            " and has no incoming transition");
  Marks added;
  added.parameters.push_back(name);
  added.arms.push_back({name});
  return Finish(ast, chosen.text, std::move(plan), added, {});
}

absl::StatusOr<InjectionResult> RemoveDefaultArm(const FsmAst& ast) {
  if (!ast.combinational.HasDefaultArm()) {
    return absl::FailedPreconditionError("design has no default arm");
  }
  std::vector<Encoding> unused = LowestUnusedEncodings(ast, 8);
  if (unused.empty()) {
    return absl::FailedPreconditionError(
        "every encoding is assigned to a state; removing the default creates no weakness");
  }
  absl::StatusOr<Baseline> base = CheckBase(ast);
  if (!base.ok()) return base.status();
  FsmAst edited = ast;
  std::vector<CaseArm>& arms = edited.combinational.arms;
  arms.erase(std::remove_if(arms.begin(), arms.end(),
                            [](const CaseArm& a) { return a.is_default(); }),
             arms.end());
  std::optional<SourceText> text = Accept(*base, edited, RuleId::kMissingDefault, true);
  if (!text) {
    return absl::FailedPreconditionError(
        "removing the default arm changes the behavior of declared states");
  }
  InjectionPlan plan;
  plan.vuln = VulnClass::kMissingDefault;
  std::vector<std::string> bits;
  for (const Encoding& e : unused) bits.push_back(e.ToBits());
  uint64_t total = 0;
  {
    std::set<uint64_t> used;
    for (const Parameter& p : ast.parameters) used.insert(p.value.value());
    int width = ast.state_regs.width;
    total = (width >= 63 ? ~uint64_t{0} : (uint64_t{1} << width)) - used.size();
  }
  plan.notes = absl::StrCat("unhandled encodings: ", absl::StrJoin(bits, ", "),
                            total > bits.size() ? ", ..." : "");
  Marks removed;
  removed.arms.push_back({});
  return Finish(ast, *std::move(text), std::move(plan), {}, removed);
}

absl::StatusOr<InjectionResult> PlanInjection(VulnClass vuln, const FsmAst& ast, uint64_t seed,
                                              const InjectOptions& options) {
  absl::StatusOr<InjectionResult> result;
  switch (vuln) {
    case VulnClass::kCwe835Trap:
      result = InjectTrapLoop(ast, seed, options);
      break;
    case VulnClass::kMissingDefault:
      result = RemoveDefaultArm(ast);
      break;
    case VulnClass::kDuplicateEncoding:
      result = InjectDuplicateEncoding(ast, seed, options);
      break;
    case VulnClass::kUnreachableState:
      result = InjectUnreachableState(ast, seed, options);
      break;
    case VulnClass::kStaticDeadlock:
      result = InjectStaticDeadlock(ast, seed, options);
      break;
  }
  if (result.ok()) result->plan.seed = seed;
  return result;
}

absl::StatusOr<InjectionResult> PlanInjection(std::string_view vuln_id, const FsmAst& ast,
                                              uint64_t seed, const InjectOptions& options) {
  std::optional<VulnClass> vuln = ParseVulnClass(vuln_id);
  if (!vuln) {
    return absl::InvalidArgumentError(
        absl::StrCat("unknown vulnerability class '", std::string(vuln_id), "'"));
  }
  return PlanInjection(*vuln, ast, seed, options);
}

}  // namespace fsmguard
