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

#ifndef FSMGUARD_CORPUS_FIDELITY_H_
#define FSMGUARD_CORPUS_FIDELITY_H_

#include <optional>
#include <string>
#include <vector>

#include "fsmguard/inject/vuln_class.h"
#include "fsmguard/report/json_codec.h"
#include "fsmguard/rtl/source_text.h"
#include "fsmguard/rules/rules.h"
#include "fsmguard/rules/violation.h"

namespace fsmguard {

struct FidelityVerdict {
  bool syntax_ok = false;
  // Insertion: the class's rule fires on something new. Mitigation: every
  // target rule is cleared.
  bool intended_present = false;
  // Violations of `modified` whose (rule, states) key the original lacks,
  // excluding the intended rule for insertions.
  std::vector<RuleViolation> unintended;
  // Mitigation only: violations the mitigated design still shares with the
  // original.
  std::vector<RuleViolation> preexisting;
  bool interface_ok = false;
  // Mitigation only: graphs equal up to encodings.
  std::optional<bool> stg_ok;
  bool overall = false;
  std::vector<std::string> notes;
};

// Module name, port names/directions/widths, clock and reset must match.
bool SameInterface(const FsmAst& a, const FsmAst& b);

FidelityVerdict VerifyInsertion(const SourceText& original, const SourceText& modified,
                                VulnClass intended, const std::vector<std::string>& protected_names,
                                const RuleConfig& rules = {});

FidelityVerdict VerifyMitigation(const SourceText& original, const SourceText& mitigated,
                                 const std::vector<RuleId>& target_rules,
                                 const std::vector<std::string>& protected_names,
                                 const RuleConfig& rules = {});

OrderedJson FidelityVerdictToJson(const FidelityVerdict& verdict);

}  // namespace fsmguard

#endif  // FSMGUARD_CORPUS_FIDELITY_H_
