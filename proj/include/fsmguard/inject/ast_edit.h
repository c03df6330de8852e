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

#ifndef FSMGUARD_INJECT_AST_EDIT_H_
#define FSMGUARD_INJECT_AST_EDIT_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "fsmguard/rtl/ast.h"

namespace fsmguard {

// Addresses a statement by case-arm index and pre-order position inside the
// arm body. Stable across emit/re-parse because the emitter preserves the
// statement structure.
struct StatementRef {
  int arm = 0;
  int preorder = 0;

  friend bool operator==(const StatementRef&, const StatementRef&) = default;
};

const Statement* Resolve(const FsmAst& ast, StatementRef ref);

// Codes of the state-register width not used by any parameter, ascending.
std::vector<Encoding> LowestUnusedEncodings(const FsmAst& ast, size_t count);

// `upper_name` in the case style of the existing state names, suffixed with
// _1, _2, ... until it collides with no declared identifier.
std::string FreshStateName(const FsmAst& ast, std::string_view upper_name);

// Appends a state parameter after the last existing one.
void AddStateParameter(FsmAst& ast, std::string name, Encoding code);

// Assignments a new arm needs so that it drives every signal the other arms
// drive. Values come from the default arm when it assigns the signal,
// otherwise 0. Signals the leading block assigns on every path are skipped.
StatementList OutputDefaultsForNewArm(const FsmAst& ast);

Statement MakeAssignment(std::string target, std::string value);

// Inserts `arm` before the default arm (or last). Returns its index.
int InsertArm(FsmAst& ast, CaseArm arm);

// An arm with the output defaults followed by next = `next_state`.
CaseArm MakeStateArm(const FsmAst& ast, const std::string& state, const std::string& next_state);

// One way to steer a state's arm towards a new target.
struct BranchEdit {
  enum class Kind {
    // Give an else-less `if` whose then-branch always writes the next-state
    // register an else branch writing the new target. Earlier writes in the
    // same statement list become dead and are dropped.
    kAddElse,
    // Rewrite the right-hand side of one next-state assignment.
    kRedirect,
  };
  Kind kind = Kind::kRedirect;
  std::string state;
  StatementRef site;
};

// Candidate edits in `state`'s own arm, in pre-order. Empty when the state
// has no arm of its own or shares its arm with other labels.
std::vector<BranchEdit> BranchEdits(const FsmAst& ast, const std::string& state);

struct AppliedEdit {
  // Position of the edited statement after the edit.
  StatementRef edited;
  // Positions (before the edit) of statements that were removed.
  std::vector<StatementRef> removed;
};

absl::StatusOr<AppliedEdit> ApplyBranchEdit(FsmAst& ast, const BranchEdit& edit,
                                            const std::string& new_target);

}  // namespace fsmguard

#endif  // FSMGUARD_INJECT_AST_EDIT_H_
