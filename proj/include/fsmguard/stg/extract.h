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

#ifndef FSMGUARD_STG_EXTRACT_H_
#define FSMGUARD_STG_EXTRACT_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "fsmguard/rtl/ast.h"
#include "fsmguard/stg/stg.h"

namespace fsmguard {

// Builds the state-transition graph of `ast`.
//
// Every assignment to the next-state register that is the last write on at
// least one path through its arm becomes one edge, guarded by the
// conjunction of the conditions that enclose it. A path that never writes
// the register goes to the leading default assignment when the block has
// one, and otherwise stays put (implicit hold). A state without its own arm
// takes the default arm's edges.
//
// The protected set is `protected_names` merged with the design's
// `@protected` annotations; every name must be a declared state.
absl::StatusOr<Stg> ExtractStg(const FsmAst& ast, const std::vector<std::string>& protected_names);

}  // namespace fsmguard

#endif  // FSMGUARD_STG_EXTRACT_H_
