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

#ifndef FSMGUARD_MITIGATE_REENCODE_H_
#define FSMGUARD_MITIGATE_REENCODE_H_

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "fsmguard/rtl/ast.h"
#include "fsmguard/stg/stg.h"

namespace fsmguard {

struct EncodingAssignment {
  // One entry per state, in declaration order.
  std::vector<std::pair<std::string, Encoding>> codes;
  // Unprotected non-self edges whose endpoints still differ in more than
  // one bit (or not at all) under `codes`.
  std::vector<std::pair<std::string, std::string>> residual_edges;
  // False when the exact search ran out of budget and the greedy labeling
  // (or the best exact partial result) was used instead.
  bool exact = true;

  const Encoding* Find(const std::string& state) const;
};

struct ReencodeOptions {
  // Graphs with more states skip the exact search.
  int exact_state_limit = 8;
  // Search nodes visited before falling back to the greedy labeling.
  uint64_t node_budget = 5'000'000;
};

// Minimizes the number of unprotected -> unprotected non-self transitions
// with Hamming distance other than one, over injective assignments of
// `stg.width`-bit codes to every state. Ties go to the lexicographically
// smallest code vector in declaration order.
absl::StatusOr<EncodingAssignment> ReencodeStates(const Stg& stg,
                                                  const ReencodeOptions& options = {});

// Objective value of a concrete code vector (declaration order).
int CountHdResiduals(const Stg& stg, const std::vector<uint64_t>& codes);

// The assignment `stg` currently uses, scored by the same objective.
EncodingAssignment CurrentAssignment(const Stg& stg);

// Rewrites the parameter literals named in `assignment`.
FsmAst ApplyEncoding(const FsmAst& ast, const EncodingAssignment& assignment);

}  // namespace fsmguard

#endif  // FSMGUARD_MITIGATE_REENCODE_H_
