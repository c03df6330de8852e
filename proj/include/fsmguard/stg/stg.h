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

#ifndef FSMGUARD_STG_STG_H_
#define FSMGUARD_STG_STG_H_

#include <map>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "fsmguard/rtl/ast.h"
#include "fsmguard/rtl/source_text.h"
#include "fsmguard/stg/encoding.h"

namespace fsmguard {

struct State {
  std::string name;
  Encoding encoding;
  bool is_protected = false;
  Span declared_span;
  // False when the case statement has no arm labelled with this state.
  bool has_arm = false;
};

enum class GuardKind {
  kAlways,        // unconditional assignment
  kExpression,    // conjunction of enclosing if/else conditions
  kFallthrough,   // no assignment on the path; the block-level default applies
  kImplicitHold,  // no assignment and no block-level default; register holds
};

struct GuardTerm {
  Expr expr;
  bool negated = false;

  friend bool operator==(const GuardTerm&, const GuardTerm&) = default;
};

struct Guard {
  GuardKind kind = GuardKind::kAlways;
  std::vector<GuardTerm> terms;
  // Some enclosing condition folds to the literal false.
  bool constant_false = false;

  // "1", "hold", "fallthrough", or the conjunction "a && !(b == 0)".
  std::string Text() const;
  // Identifiers referenced by the guard, in order of first appearance.
  std::vector<std::string> Inputs() const;
};

struct Transition {
  int from = 0;
  int to = 0;
  Guard guard;
  Span span;

  bool is_self() const { return from == to; }
};

struct Stg {
  std::vector<State> states;
  std::vector<Transition> transitions;
  int reset_state = 0;
  bool has_default_arm = false;
  // Target of the default arm, when it assigns the next state.
  std::optional<int> default_arm_target;
  int width = 1;

  std::optional<int> IndexOf(std::string_view name) const;
  const std::string& Name(int index) const { return states[index].name; }
  std::vector<std::string> ProtectedNames() const;
  bool HasProtected() const;
};

// States reachable from the reset state, treating every guard that does not
// fold to false as satisfiable.
std::set<int> ReachableStates(const Stg& stg);

// Transitions with both endpoints unprotected, in source order. Self edges
// are included; rule configuration decides whether to use them.
std::vector<Transition> UnprotectedTransitions(const Stg& stg);

// True iff both graphs have the same state names and the same multiset of
// (from, to, guard) triples. Encodings and the default arm are ignored.
bool StgIsomorphicModuloEncoding(const Stg& a, const Stg& b);

// As above after renaming every identifier of `a` (states and guard inputs)
// through `rename`; names absent from the map are kept.
bool StgIsomorphicUnderRenaming(const Stg& a, const Stg& b,
                                const std::map<std::string, std::string>& rename);

// One "FROM -> TO [guard]" line per transition, in transition order.
std::string DumpStg(const Stg& stg);

}  // namespace fsmguard

#endif  // FSMGUARD_STG_STG_H_
