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

#include "fsmguard/rules/violation.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace fsmguard {

const std::vector<RuleId>& AllRules() {
  static const std::vector<RuleId> kAll = {
      RuleId::kFifNonzero,       RuleId::kHdNotOne,          RuleId::kStaticDeadlock,
      RuleId::kTrapLoop,         RuleId::kUnreachableState,  RuleId::kDuplicateEncoding,
      RuleId::kMissingDefault,
  };
  return kAll;
}

std::string RuleIdName(RuleId rule) {
  switch (rule) {
    case RuleId::kFifNonzero:
      return "FIF_NONZERO";
    case RuleId::kHdNotOne:
      return "HD_NOT_ONE";
    case RuleId::kStaticDeadlock:
      return "STATIC_DEADLOCK";
    case RuleId::kTrapLoop:
      return "TRAP_LOOP_CWE835";
    case RuleId::kUnreachableState:
      return "UNREACHABLE_STATE";
    case RuleId::kDuplicateEncoding:
      return "DUPLICATE_ENCODING";
    case RuleId::kMissingDefault:
      return "MISSING_DEFAULT";
  }
  return "UNKNOWN";
}

std::optional<RuleId> ParseRuleId(std::string_view name) {
  for (RuleId rule : AllRules()) {
    if (RuleIdName(rule) == name) return rule;
  }
  return std::nullopt;
}

RuleId RuleForEvidence(const Evidence& evidence) {
  return static_cast<RuleId>(evidence.index());
}

std::string RuleViolation::Explanation() const {
  const std::vector<std::string>& s = locus.states;
  switch (rule) {
    case RuleId::kFifNonzero: {
      const FifResult& r = std::get<FifEvidence>(evidence).result;
      std::vector<int> bits = r.PerBitValues();
      return absl::StrCat("transition ", s[0], " -> ", s[1], " has FIF 1 against protected state ",
                          s[2], " (per-bit ", absl::StrJoin(bits, ","), ")");
    }
    case RuleId::kHdNotOne:
      return absl::StrCat("transition ", s[0], " -> ", s[1], " has Hamming distance ",
                          std::get<HdEvidence>(evidence).distance);
    case RuleId::kStaticDeadlock:
      return absl::StrCat("state ", s[0], " is entered from ",
                          absl::StrJoin(std::get<DeadlockEvidence>(evidence).entered_from, ", "),
                          " and can only transition to itself");
    case RuleId::kTrapLoop:
      return absl::StrCat("states {", absl::StrJoin(s, ", "),
                          "} form a loop with no exit condition");
    case RuleId::kUnreachableState:
      return absl::StrCat("state ", s[0], " has no incoming transition from a reachable state",
                          std::get<UnreachableEvidence>(evidence).has_outgoing
                              ? " but has outgoing transitions"
                              : " and no outgoing transitions");
    case RuleId::kDuplicateEncoding:
      return absl::StrCat("states ", s[0], " and ", s[1], " share encoding ",
                          std::get<DuplicateEvidence>(evidence).encoding.ToBits());
    case RuleId::kMissingDefault: {
      const MissingDefaultEvidence& e = std::get<MissingDefaultEvidence>(evidence);
      std::vector<std::string> codes;
      for (const Encoding& code : e.unused) codes.push_back(code.ToBits());
      std::string more = e.unused_count > e.unused.size()
                             ? absl::StrCat(" and ", e.unused_count - e.unused.size(), " more")
                             : "";
      return absl::StrCat("no default arm handles unused encodings ", absl::StrJoin(codes, ", "),
                          more);
    }
  }
  return "";
}

std::pair<RuleId, std::vector<std::string>> RuleViolation::Key() const {
  return {rule, locus.states};
}

void SortViolations(std::vector<RuleViolation>& violations) {
  std::stable_sort(violations.begin(), violations.end(),
                   [](const RuleViolation& a, const RuleViolation& b) {
                     if (a.rule != b.rule) return a.rule < b.rule;
                     return a.locus.span.first_line < b.locus.span.first_line;
                   });
}

}  // namespace fsmguard
