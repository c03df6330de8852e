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

#include "fsmguard/stg/stg.h"

#include <algorithm>
#include <deque>
#include <tuple>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace fsmguard {
namespace {

std::string TermText(const GuardTerm& term) {
  std::string text = term.expr.Text();
  if (!term.negated) return text;
  if (term.expr.tokens.size() == 1) return absl::StrCat("!", text);
  return absl::StrCat("!(", text, ")");
}

Expr RenameExpr(const Expr& expr, const std::map<std::string, std::string>& rename) {
  Expr out = expr;
  for (std::string& token : out.tokens) {
    auto it = rename.find(token);
    if (it != rename.end()) token = it->second;
  }
  return out;
}

std::string Rename(const std::string& name, const std::map<std::string, std::string>& rename) {
  auto it = rename.find(name);
  return it == rename.end() ? name : it->second;
}

using EdgeKey = std::tuple<std::string, std::string, std::string>;

std::vector<EdgeKey> EdgeKeys(const Stg& stg, const std::map<std::string, std::string>& rename) {
  std::vector<EdgeKey> keys;
  for (const Transition& t : stg.transitions) {
    Guard guard = t.guard;
    for (GuardTerm& term : guard.terms) term.expr = RenameExpr(term.expr, rename);
    keys.emplace_back(Rename(stg.Name(t.from), rename), Rename(stg.Name(t.to), rename),
                      guard.Text());
  }
  std::sort(keys.begin(), keys.end());
  return keys;
}

}  // namespace

std::string Guard::Text() const {
  switch (kind) {
    case GuardKind::kAlways:
      return "1";
    case GuardKind::kImplicitHold:
      return "hold";
    case GuardKind::kFallthrough:
      if (terms.empty()) return "fallthrough";
      break;
    case GuardKind::kExpression:
      break;
  }
  std::vector<std::string> parts;
  for (const GuardTerm& term : terms) parts.push_back(TermText(term));
  return absl::StrJoin(parts, " && ");
}

std::vector<std::string> Guard::Inputs() const {
  std::vector<std::string> out;
  for (const GuardTerm& term : terms) {
    for (const std::string& id : term.expr.Identifiers()) {
      if (std::find(out.begin(), out.end(), id) == out.end()) out.push_back(id);
    }
  }
  return out;
}

std::optional<int> Stg::IndexOf(std::string_view name) const {
  for (size_t i = 0; i < states.size(); ++i) {
    if (states[i].name == name) return static_cast<int>(i);
  }
  return std::nullopt;
}

std::vector<std::string> Stg::ProtectedNames() const {
  std::vector<std::string> out;
  for (const State& s : states) {
    if (s.is_protected) out.push_back(s.name);
  }
  return out;
}

bool Stg::HasProtected() const {
  return std::any_of(states.begin(), states.end(),
                     [](const State& s) { return s.is_protected; });
}

std::set<int> ReachableStates(const Stg& stg) {
  std::vector<std::vector<int>> successors(stg.states.size());
  for (const Transition& t : stg.transitions) {
    if (!t.guard.constant_false) successors[t.from].push_back(t.to);
  }
  std::set<int> seen;
  if (stg.states.empty()) return seen;
  std::deque<int> queue{stg.reset_state};
  seen.insert(stg.reset_state);
  while (!queue.empty()) {
    int s = queue.front();
    queue.pop_front();
    for (int next : successors[s]) {
      if (seen.insert(next).second) queue.push_back(next);
    }
  }
  return seen;
}

std::vector<Transition> UnprotectedTransitions(const Stg& stg) {
  std::vector<Transition> out;
  for (const Transition& t : stg.transitions) {
    if (!stg.states[t.from].is_protected && !stg.states[t.to].is_protected) out.push_back(t);
  }
  return out;
}

bool StgIsomorphicUnderRenaming(const Stg& a, const Stg& b,
                                const std::map<std::string, std::string>& rename) {
  std::vector<std::string> names_a;
  std::vector<std::string> names_b;
  for (const State& s : a.states) names_a.push_back(Rename(s.name, rename));
  for (const State& s : b.states) names_b.push_back(s.name);
  std::sort(names_a.begin(), names_a.end());
  std::sort(names_b.begin(), names_b.end());
  if (names_a != names_b) return false;
  return EdgeKeys(a, rename) == EdgeKeys(b, {});
}

bool StgIsomorphicModuloEncoding(const Stg& a, const Stg& b) {
  return StgIsomorphicUnderRenaming(a, b, {});
}

std::string DumpStg(const Stg& stg) {
  std::string out;
  for (const Transition& t : stg.transitions) {
    absl::StrAppend(&out, stg.Name(t.from), " -> ", stg.Name(t.to), " [", t.guard.Text(),
                    "]\n");
  }
  return out;
}

}  // namespace fsmguard
