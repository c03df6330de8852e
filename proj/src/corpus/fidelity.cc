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

#include "fsmguard/corpus/fidelity.h"

#include <algorithm>
#include <set>

#include "absl/strings/str_cat.h"
#include "fsmguard/rtl/diagnostic.h"
#include "fsmguard/rules/check_report.h"
#include "fsmguard/stg/stg.h"

namespace fsmguard {
namespace {

using Key = std::pair<RuleId, std::vector<std::string>>;

std::set<Key> KeysOf(const CheckReport& report) {
  std::set<Key> keys;
  for (const RuleViolation& v : report.violations) keys.insert(v.Key());
  return keys;
}

// Parsed and a graph was extracted.
bool Analyzable(const CheckReport& report) { return report.parsed && report.stg.has_value(); }

std::string FirstError(const CheckReport& report) {
  for (const Diagnostic& d : report.diagnostics) {
    if (d.severity == Severity::kError) return FormatDiagnostic(d, report.design_id);
  }
  return "analysis failed";
}

void Finish(FidelityVerdict& verdict) {
  verdict.overall = verdict.syntax_ok && verdict.intended_present &&
                    verdict.unintended.empty() && verdict.interface_ok;
}

}  // namespace

bool SameInterface(const FsmAst& a, const FsmAst& b) {
  if (a.module_name != b.module_name || a.ports.size() != b.ports.size()) return false;
  for (size_t i = 0; i < a.ports.size(); ++i) {
    const Port& x = a.ports[i];
    const Port* y = b.FindPort(x.name);
    if (y == nullptr || y->direction != x.direction || y->width != x.width) return false;
  }
  return a.ClockName() == b.ClockName() && a.ResetName() == b.ResetName();
}

FidelityVerdict VerifyInsertion(const SourceText& original, const SourceText& modified,
                                VulnClass intended, const std::vector<std::string>& protected_names,
                                const RuleConfig& rules) {
  FidelityVerdict verdict;
  CheckReport before = RunAllChecks(original, protected_names, rules);
  if (!Analyzable(before)) {
    verdict.notes.push_back(absl::StrCat("original cannot be analyzed: ", FirstError(before)));
    return verdict;
  }
  CheckReport after = RunAllChecks(modified, protected_names, rules);
  verdict.syntax_ok = Analyzable(after);
  if (!verdict.syntax_ok) {
    verdict.notes.push_back(absl::StrCat("modified cannot be analyzed: ", FirstError(after)));
    return verdict;
  }
  RuleId rule = MatchingRule(intended);
  std::set<Key> old_keys = KeysOf(before);
  for (const RuleViolation& v : after.violations) {
    if (old_keys.count(v.Key())) continue;
    if (v.rule == rule) {
      verdict.intended_present = true;
    } else {
      verdict.unintended.push_back(v);
    }
  }
  if (!verdict.intended_present) {
    verdict.notes.push_back(absl::StrCat("no new ", RuleIdName(rule), " violation"));
  }
  verdict.interface_ok = SameInterface(*before.ast, *after.ast);
  if (!verdict.interface_ok) verdict.notes.push_back("module interface changed");
  Finish(verdict);
  return verdict;
}

FidelityVerdict VerifyMitigation(const SourceText& original, const SourceText& mitigated,
                                 const std::vector<RuleId>& target_rules,
                                 const std::vector<std::string>& protected_names,
                                 const RuleConfig& rules) {
  FidelityVerdict verdict;
  CheckReport before = RunAllChecks(original, protected_names, rules);
  if (!Analyzable(before)) {
    verdict.notes.push_back(absl::StrCat("original cannot be analyzed: ", FirstError(before)));
    return verdict;
  }
  CheckReport after = RunAllChecks(mitigated, protected_names, rules);
  verdict.syntax_ok = Analyzable(after);
  if (!verdict.syntax_ok) {
    verdict.notes.push_back(absl::StrCat("mitigated cannot be analyzed: ", FirstError(after)));
    return verdict;
  }
  verdict.intended_present = true;
  for (RuleId rule : target_rules) {
    if (after.Count(rule) > 0) {
      verdict.intended_present = false;
      verdict.notes.push_back(absl::StrCat(RuleIdName(rule), " not cleared"));
    }
  }
  std::set<Key> old_keys = KeysOf(before);
  for (const RuleViolation& v : after.violations) {
    bool targeted = std::find(target_rules.begin(), target_rules.end(), v.rule) !=
                    target_rules.end();
    if (old_keys.count(v.Key())) {
      if (!targeted) verdict.preexisting.push_back(v);
    } else if (!targeted) {
      verdict.unintended.push_back(v);
    }
  }
  verdict.interface_ok = SameInterface(*before.ast, *after.ast);
  if (!verdict.interface_ok) verdict.notes.push_back("module interface changed");
  verdict.stg_ok = StgIsomorphicModuloEncoding(*before.stg, *after.stg);
  Finish(verdict);
  return verdict;
}

OrderedJson FidelityVerdictToJson(const FidelityVerdict& verdict) {
  OrderedJson out;
  out["schema_version"] = 1;
  out["overall"] = verdict.overall ? "pass" : "fail";
  out["syntax_ok"] = verdict.syntax_ok;
  out["intended_present"] = verdict.intended_present;
  out["interface_ok"] = verdict.interface_ok;
  out["stg_ok"] = verdict.stg_ok ? OrderedJson(*verdict.stg_ok) : OrderedJson(nullptr);
  out["unintended"] = OrderedJson::array();
  for (const RuleViolation& v : verdict.unintended) out["unintended"].push_back(ViolationToJson(v));
  out["preexisting"] = OrderedJson::array();
  for (const RuleViolation& v : verdict.preexisting) {
    out["preexisting"].push_back(ViolationToJson(v));
  }
  out["notes"] = verdict.notes;
  return out;
}

}  // namespace fsmguard
