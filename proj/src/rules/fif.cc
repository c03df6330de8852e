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

#include "fsmguard/rules/fif.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace fsmguard {

std::vector<int> FifResult::PerBitValues() const {
  std::vector<int> out;
  for (const FifBit& bit : per_bit) out.push_back(bit.fif ? 1 : 0);
  return out;
}

absl::StatusOr<FifResult> FifMetric(const Encoding& bx, const Encoding& by, const Encoding& bp) {
  if (bx.width() != by.width() || bx.width() != bp.width()) {
    return absl::InvalidArgumentError(absl::StrCat("FIF operands differ in width: ", bx.width(),
                                                   ", ", by.width(), ", ", bp.width()));
  }
  FifResult result;
  result.overall = true;
  for (int i = 0; i < bx.width(); ++i) {
    FifBit bit;
    bit.triple = BitTriple{bx.bit(i), by.bit(i), bp.bit(i), i};
    bit.fif = (bit.triple.bx != bit.triple.by) || (bit.triple.bx && bit.triple.bp);
    result.overall = result.overall && bit.fif;
    result.per_bit.push_back(bit);
  }
  return result;
}

}  // namespace fsmguard
