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

#ifndef FSMGUARD_RULES_VIOLATION_H_
#define FSMGUARD_RULES_VIOLATION_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "fsmguard/rtl/source_text.h"
#include "fsmguard/rules/fif.h"
#include "fsmguard/stg/encoding.h"

namespace fsmguard {

// Declaration order is the report order.
enum class RuleId {
  kFifNonzero,
  kHdNotOne,
  kStaticDeadlock,
  kTrapLoop,
  kUnreachableState,
  kDuplicateEncoding,
  kMissingDefault,
};

inline constexpr int kRuleCount = 7;

const std::vector<RuleId>& AllRules();
// "FIF_NONZERO", "HD_NOT_ONE", ...
std::string RuleIdName(RuleId rule);
std::optional<RuleId> ParseRuleId(std::string_view name);

struct FifEvidence {
  FifResult result;
};
struct HdEvidence {
  int distance = 0;
};
struct DeadlockEvidence {
  // Distinct reachable states with an edge into the deadlock state.
  std::vector<std::string> entered_from;
};
struct TrapEvidence {
  std::vector<std::string> members;
  std::vector<std::string> entered_from;
};
struct UnreachableEvidence {
  // True when the state has an edge to some other state; false when it is
  // fully isolated.
  bool has_outgoing = false;
};
struct DuplicateEvidence {
  Encoding encoding;
};
struct MissingDefaultEvidence {
  // Ascending, truncated to a cap; `unused_count` is the full number.
  std::vector<Encoding> unused;
  uint64_t unused_count = 0;
};

using Evidence = std::variant<FifEvidence, HdEvidence, DeadlockEvidence, TrapEvidence,
                              UnreachableEvidence, DuplicateEvidence, MissingDefaultEvidence>;

// The evidence alternative each rule carries.
RuleId RuleForEvidence(const Evidence& evidence);

struct Locus {
  // Involved states: FIF (from, to, protected); HD (from, to); deadlock and
  // unreachable (state); trap (members); duplicate (first, second).
  std::vector<std::string> states;
  std::optional<std::pair<std::string, std::string>> transition;
  Span span;
};

struct RuleViolation {
  RuleId rule = RuleId::kFifNonzero;
  Locus locus;
  Evidence evidence;

  // One-line human description.
  std::string Explanation() const;
  // (rule, states) identity used when comparing reports.
  std::pair<RuleId, std::vector<std::string>> Key() const;
};

// Report order: rule id, then first source line. Stable.
void SortViolations(std::vector<RuleViolation>& violations);

}  // namespace fsmguard

#endif  // FSMGUARD_RULES_VIOLATION_H_
