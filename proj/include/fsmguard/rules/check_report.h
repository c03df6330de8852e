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

#ifndef FSMGUARD_RULES_CHECK_REPORT_H_
#define FSMGUARD_RULES_CHECK_REPORT_H_

#include <optional>
#include <string>
#include <vector>

#include "fsmguard/rtl/ast.h"
#include "fsmguard/rtl/diagnostic.h"
#include "fsmguard/rtl/source_text.h"
#include "fsmguard/rules/rules.h"
#include "fsmguard/rules/violation.h"
#include "fsmguard/stg/stg.h"

namespace fsmguard {

struct NotEvaluated {
  RuleId rule;
  std::string reason;
};

struct CheckReport {
  static constexpr int kSchemaVersion = 1;

  std::string design_id;
  bool parsed = false;
  std::vector<std::string> protected_states;
  std::vector<RuleViolation> violations;
  // Parse errors and lint warnings.
  std::vector<Diagnostic> diagnostics;
  RuleConfig config;
  std::vector<NotEvaluated> not_evaluated;

  // Intermediate results for in-process consumers. Not serialized.
  std::optional<FsmAst> ast;
  std::optional<Stg> stg;

  bool HasViolations() const { return !violations.empty(); }
  // Distinct violated rules in report order.
  std::vector<RuleId> ViolatedRules() const;
  size_t Count(RuleId rule) const;
};

// Parses, lints, extracts the graph and runs every enabled rule. A design
// that fails to parse yields a report holding only its diagnostics.
CheckReport RunAllChecks(const SourceText& source, const std::vector<std::string>& protected_names,
                         const RuleConfig& config = {});

// Same, starting from a parsed design.
CheckReport CheckAst(const FsmAst& ast, const std::vector<std::string>& protected_names,
                     const RuleConfig& config, std::string design_id);

// Pretty-printed JSON with a fixed key order.
std::string CheckReportToJson(const CheckReport& report);

// "Rule <ID>: violated, explanation: <text>, line no: <n>" per violation and
// "Rule <ID>: not violated" for clean rules, then diagnostics.
std::string FormatCheckReportText(const CheckReport& report);

}  // namespace fsmguard

#endif  // FSMGUARD_RULES_CHECK_REPORT_H_
