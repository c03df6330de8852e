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

#include "fsmguard/rules/check_report.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "fsmguard/report/json_codec.h"
#include "fsmguard/rtl/lint.h"
#include "fsmguard/rtl/parser.h"
#include "fsmguard/stg/extract.h"

namespace fsmguard {

std::vector<RuleId> CheckReport::ViolatedRules() const {
  std::vector<RuleId> out;
  for (const RuleViolation& v : violations) {
    if (std::find(out.begin(), out.end(), v.rule) == out.end()) out.push_back(v.rule);
  }
  std::sort(out.begin(), out.end());
  return out;
}

size_t CheckReport::Count(RuleId rule) const {
  return std::count_if(violations.begin(), violations.end(),
                       [rule](const RuleViolation& v) { return v.rule == rule; });
}

CheckReport CheckAst(const FsmAst& ast, const std::vector<std::string>& protected_names,
                     const RuleConfig& config, std::string design_id) {
  CheckReport report;
  report.design_id = std::move(design_id);
  report.config = config;
  report.parsed = true;
  report.ast = ast;
  report.diagnostics = Lint(ast);

  absl::StatusOr<Stg> stg = ExtractStg(ast, protected_names);
  if (!stg.ok()) {
    report.diagnostics.push_back(Diagnostic{Severity::kError, std::string(kErrSemantic),
                                            std::string(stg.status().message()), ast.span});
    return report;
  }
  report.protected_states = stg->ProtectedNames();

  std::vector<RuleViolation>& out = report.violations;
  auto append = [&out](std::vector<RuleViolation> found) {
    out.insert(out.end(), std::make_move_iterator(found.begin()),
               std::make_move_iterator(found.end()));
  };
  if (stg->HasProtected()) {
    if (config.Enabled(RuleId::kFifNonzero)) {
      absl::StatusOr<std::vector<RuleViolation>> fif = CheckFifRule(*stg, config);
      if (fif.ok()) append(*std::move(fif));
    }
    if (config.Enabled(RuleId::kHdNotOne)) append(CheckHdRule(*stg, config));
  } else {
    for (RuleId rule : {RuleId::kFifNonzero, RuleId::kHdNotOne}) {
      if (config.Enabled(rule)) {
        report.not_evaluated.push_back(NotEvaluated{rule, "no protected state"});
      }
    }
  }
  if (config.Enabled(RuleId::kStaticDeadlock)) append(DetectStaticDeadlock(*stg));
  if (config.Enabled(RuleId::kTrapLoop)) append(DetectTrapLoops(*stg));
  if (config.Enabled(RuleId::kUnreachableState)) append(DetectUnreachableStates(*stg));
  if (config.Enabled(RuleId::kDuplicateEncoding)) append(DetectDuplicateEncodings(*stg));
  if (config.Enabled(RuleId::kMissingDefault)) append(CheckDefaultHandling(ast, *stg));
  SortViolations(out);
  report.stg = *std::move(stg);
  return report;
}

CheckReport RunAllChecks(const SourceText& source, const std::vector<std::string>& protected_names,
                         const RuleConfig& config) {
  ParseResult parsed = ParseSource(source);
  if (!parsed.ok()) {
    CheckReport report;
    report.design_id = source.origin;
    report.config = config;
    report.diagnostics = std::move(parsed.diagnostics);
    return report;
  }
  CheckReport report = CheckAst(*parsed.ast, protected_names, config, source.origin);
  // Parser warnings, if any, precede lint findings.
  report.diagnostics.insert(report.diagnostics.begin(), parsed.diagnostics.begin(),
                            parsed.diagnostics.end());
  return report;
}

std::string CheckReportToJson(const CheckReport& report) {
  return CheckReportToJsonValue(report).dump(2) + "\n";
}

std::string FormatCheckReportText(const CheckReport& report) {
  std::string out;
  absl::StrAppend(&out, "design: ", report.design_id, "\n");
  if (!report.parsed) {
    for (const Diagnostic& d : report.diagnostics) {
      absl::StrAppend(&out, FormatDiagnostic(d, report.design_id), "\n");
    }
    return out;
  }
  absl::StrAppend(&out, "protected: ",
                  report.protected_states.empty() ? "(none)"
                                                  : absl::StrJoin(report.protected_states, ", "),
                  "\n");
  for (RuleId rule : AllRules()) {
    std::string name = RuleIdName(rule);
    if (!report.config.Enabled(rule)) {
      absl::StrAppend(&out, "Rule ", name, ": disabled\n");
      continue;
    }
    auto skipped = std::find_if(report.not_evaluated.begin(), report.not_evaluated.end(),
                                [rule](const NotEvaluated& n) { return n.rule == rule; });
    if (skipped != report.not_evaluated.end()) {
      absl::StrAppend(&out, "Rule ", name, ": not evaluated, reason: ", skipped->reason, "\n");
      continue;
    }
    bool any = false;
    for (const RuleViolation& v : report.violations) {
      if (v.rule != rule) continue;
      any = true;
      absl::StrAppend(&out, "Rule ", name, ": violated, explanation: ", v.Explanation());
      if (v.locus.span.valid()) absl::StrAppend(&out, ", line no: ", v.locus.span.first_line);
      out.push_back('\n');
    }
    if (!any) absl::StrAppend(&out, "Rule ", name, ": not violated\n");
  }
  for (const Diagnostic& d : report.diagnostics) {
    absl::StrAppend(&out, FormatDiagnostic(d, report.design_id), "\n");
  }
  return out;
}

}  // namespace fsmguard
