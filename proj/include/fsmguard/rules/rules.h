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

#ifndef FSMGUARD_RULES_RULES_H_
#define FSMGUARD_RULES_RULES_H_

#include <cstdint>
#include <set>
#include <vector>

#include "absl/status/statusor.h"
#include "fsmguard/rtl/ast.h"
#include "fsmguard/rules/violation.h"
#include "fsmguard/stg/stg.h"

namespace fsmguard {

struct RuleConfig {
  std::set<RuleId> disabled;
  // Apply the FIF and HD rules to unprotected self edges too.
  bool include_self_edges = false;

  bool Enabled(RuleId rule) const { return !disabled.count(rule); }
};

// One FIF_NONZERO per (unprotected transition, protected state) pair whose
// overall FIF is 1. Fails when the graph has no protected state.
absl::StatusOr<std::vector<RuleViolation>> CheckFifRule(const Stg& stg,
                                                        const RuleConfig& config = {});

// One HD_NOT_ONE per unprotected transition whose endpoints differ in a
// number of bits other than one.
std::vector<RuleViolation> CheckHdRule(const Stg& stg, const RuleConfig& config = {});

// Reachable states whose every outgoing edge is a self edge and that have an
// incoming edge from another reachable state.
std::vector<RuleViolation> DetectStaticDeadlock(const Stg& stg);

// Strongly connected sets of two or more reachable states with no edge
// leaving the set, excluding the case where the set is everything reachable.
std::vector<RuleViolation> DetectTrapLoops(const Stg& stg);

// Declared states, other than the reset state, that are not reachable.
std::vector<RuleViolation> DetectUnreachableStates(const Stg& stg);

// One violation per unordered pair of states sharing a code.
std::vector<RuleViolation> DetectDuplicateEncodings(const Stg& stg);

// Codes of the state register that no state uses, ascending. At most `cap`
// are returned; `total` receives the full count.
std::vector<Encoding> UnusedEncodings(const Stg& stg, size_t cap, uint64_t* total);

inline constexpr size_t kUnusedEncodingCap = 64;

// MISSING_DEFAULT when the case has no default arm and some code is unused.
std::vector<RuleViolation> CheckDefaultHandling(const FsmAst& ast, const Stg& stg);

// Strongly connected components of the graph restricted to `nodes`, each
// sorted ascending, in order of their smallest member.
std::vector<std::vector<int>> StronglyConnectedComponents(
    int node_count, const std::vector<std::vector<int>>& successors, const std::set<int>& nodes);

}  // namespace fsmguard

#endif  // FSMGUARD_RULES_RULES_H_
