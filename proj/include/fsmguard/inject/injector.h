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

#ifndef FSMGUARD_INJECT_INJECTOR_H_
#define FSMGUARD_INJECT_INJECTOR_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "fsmguard/inject/vuln_class.h"
#include "fsmguard/rtl/ast.h"
#include "fsmguard/rtl/source_text.h"

namespace fsmguard {

// Ground truth for one injected defect.
struct InjectionPlan {
  VulnClass vuln = VulnClass::kStaticDeadlock;
  uint64_t seed = 0;
  // Deadlock/trap: the state whose branch was redirected. Unreachable: the
  // new state's exit target. Duplicate: the state whose literal was
  // overwritten. Empty for default removal.
  std::string target_state;
  std::vector<std::string> added_states;
  // Lines of the injected text that differ from the emitted base design.
  std::vector<Span> modified_spans;
  // Lines of the emitted base design that no longer exist.
  std::vector<Span> removed_spans;
  std::string notes;
};

struct InjectionResult {
  FsmAst ast;
  // EmitVerilog(ast); spans in the plan refer to this text.
  SourceText text;
  InjectionPlan plan;
};

// Overrides for the seeded choices. Unset fields are drawn from the seed.
struct InjectOptions {
  std::optional<std::string> target_state;
  // Duplicate encoding only: the state whose encoding is copied.
  std::optional<std::string> source_state;
};

// Every injection is checked before it is returned: the emitted design must
// re-parse, trip the class's rule, and raise no violation of any other rule
// that the base design did not already have. Seeded choices are made among
// the candidates that pass this check.

// Redirects one branch of a reachable unprotected state into a new
// self-looping state. Prefers giving an else-less `if` an else branch; falls
// back to rewriting an existing next-state assignment.
absl::StatusOr<InjectionResult> InjectStaticDeadlock(const FsmAst& ast, uint64_t seed,
                                                     const InjectOptions& options = {});
// Overwrites one state's literal with another state's encoding.
absl::StatusOr<InjectionResult> InjectDuplicateEncoding(const FsmAst& ast, uint64_t seed,
                                                        const InjectOptions& options = {});
// Adds a state with an outgoing edge and no incoming edge.
absl::StatusOr<InjectionResult> InjectUnreachableState(const FsmAst& ast, uint64_t seed,
                                                       const InjectOptions& options = {});
// Deletes the default arm of a design that has unused encodings.
absl::StatusOr<InjectionResult> RemoveDefaultArm(const FsmAst& ast);
// Adds two states that alternate forever and redirects one branch into them.
absl::StatusOr<InjectionResult> InjectTrapLoop(const FsmAst& ast, uint64_t seed,
                                               const InjectOptions& options = {});

absl::StatusOr<InjectionResult> PlanInjection(VulnClass vuln, const FsmAst& ast, uint64_t seed,
                                              const InjectOptions& options = {});
// Resolves `vuln_id` with ParseVulnClass; unknown ids are InvalidArgument.
absl::StatusOr<InjectionResult> PlanInjection(std::string_view vuln_id, const FsmAst& ast,
                                              uint64_t seed, const InjectOptions& options = {});

}  // namespace fsmguard

#endif  // FSMGUARD_INJECT_INJECTOR_H_
