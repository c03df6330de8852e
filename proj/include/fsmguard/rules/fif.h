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

#ifndef FSMGUARD_RULES_FIF_H_
#define FSMGUARD_RULES_FIF_H_

#include <vector>

#include "absl/status/statusor.h"
#include "fsmguard/stg/encoding.h"

namespace fsmguard {

// Bit i of the present (bx), next (by) and protected (bp) state codes.
// Index 0 is the most significant bit.
struct BitTriple {
  bool bx = false;
  bool by = false;
  bool bp = false;
  int index = 0;
};

struct FifBit {
  BitTriple triple;
  bool fif = false;
};

// Fault-injection feasibility of one transition against one protected state.
struct FifResult {
  std::vector<FifBit> per_bit;
  bool overall = false;

  std::vector<int> PerBitValues() const;
};

// fif_i = (bx_i XOR by_i) OR (bx_i AND bp_i); overall = product of fif_i over
// i = 0..n-1. Widths must agree.
absl::StatusOr<FifResult> FifMetric(const Encoding& bx, const Encoding& by, const Encoding& bp);

}  // namespace fsmguard

#endif  // FSMGUARD_RULES_FIF_H_
