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

#ifndef FSMGUARD_MITIGATE_MITIGATION_H_
#define FSMGUARD_MITIGATE_MITIGATION_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "fsmguard/mitigate/reencode.h"
#include "fsmguard/rtl/ast.h"
#include "fsmguard/rtl/source_text.h"
#include "fsmguard/rules/check_report.h"

namespace fsmguard {

// Appends `default: <next> = target;` (with output defaults).
absl::StatusOr<FsmAst> AddDefaultArm(const FsmAst& ast, const std::string& target);

// Gives `state` a way out to `exit_target`: guarded by `exit_input` when it
// names a data input, otherwise unconditional. Creates an arm for the state
// when it has none of its own.
absl::StatusOr<FsmAst> AddExitTransition(const FsmAst& ast, const std::string& state,
                                         const std::string& exit_target,
                                         const std::string& exit_input = "");

// AddExitTransition, restricted to states the checker flags as deadlocked.
absl::StatusOr<FsmAst> RemoveStaticDeadlock(const FsmAst& ast, const std::string& state,
                                            const std::string& exit_target,
                                            const std::string& exit_input = "");

// Deletes the parameter and case arm of an unreachable, non-reset state.
// Fails while another arm still names the state.
absl::StatusOr<FsmAst> RemoveUnreachableState(const FsmAst& ast, const std::string& state);

// Moves every later-declared state that shares a code onto the lowest
// unused code.
absl::StatusOr<FsmAst> UniquifyEncodings(const FsmAst& ast);

struct MitigationConfig {
  std::vector<std::string> protected_names;
  RuleConfig rules;
  // Input guarding the exits added to deadlock and trap states; empty means
  // unconditional.
  std::string exit_input;
  // Target of added default arms and exits; empty means the reset state.
  std::string fallback_state;
  int max_rounds = 5;
  ReencodeOptions reencode;
};

struct MitigationOutcome {
  static constexpr int kSchemaVersion = 1;
  SourceText design;
  // Rules violated by the input and not by the output.
  std::vector<RuleId> fixed;
  // Violations left in the output; a subset of the input's.
  std::vector<RuleViolation> residual;
  // Output STG isomorphic to the input STG up to encodings.
  bool stg_preserved = true;
  // One line per applied or reverted fix, in order.
  std::vector<std::string> steps;
  int rounds = 0;
};

// Applies fixes in the order duplicates, unreachable states, deadlocks and
// traps, default arm, re-encoding. The design is re-checked after each fix;
// a fix that raises a violation the design did not have, or does not
// reduce its own rule's count, is reverted. Repeats until a round changes
// nothing or `max_rounds` is reached.
MitigationOutcome Mitigate(const SourceText& src, const CheckReport& report,
                           const MitigationConfig& config = {});

std::string MitigationOutcomeToJson(const MitigationOutcome& outcome);

}  // namespace fsmguard

#endif  // FSMGUARD_MITIGATE_MITIGATION_H_
