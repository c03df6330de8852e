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

#include "fsmguard/rules/rules.h"

#include <algorithm>
#include <map>

#include "absl/status/status.h"

namespace fsmguard {
namespace {

bool Applies(const Transition& t, const RuleConfig& config) {
  return config.include_self_edges || !t.is_self();
}

std::vector<std::vector<int>> Successors(const Stg& stg) {
  std::vector<std::vector<int>> out(stg.states.size());
  for (const Transition& t : stg.transitions) {
    if (t.guard.constant_false) continue;
    if (std::find(out[t.from].begin(), out[t.from].end(), t.to) == out[t.from].end()) {
      out[t.from].push_back(t.to);
    }
  }
  return out;
}

std::vector<std::string> EnteredFrom(const Stg& stg, const std::set<int>& targets,
                                     const std::set<int>& reachable) {
  std::set<int> sources;
  for (const Transition& t : stg.transitions) {
    if (t.guard.constant_false) continue;
    if (targets.count(t.to) && !targets.count(t.from) && reachable.count(t.from)) {
      sources.insert(t.from);
    }
  }
  std::vector<std::string> names;
  for (int s : sources) names.push_back(stg.Name(s));
  return names;
}

Span StateSpan(const Stg& stg, int state) { return stg.states[state].declared_span; }

}  // namespace

absl::StatusOr<std::vector<RuleViolation>> CheckFifRule(const Stg& stg, const RuleConfig& config) {
  if (!stg.HasProtected()) {
    return absl::FailedPreconditionError("FIF rule requires a protected state");
  }
  std::vector<RuleViolation> out;
  for (const Transition& t : UnprotectedTransitions(stg)) {
    if (!Applies(t, config)) continue;
    for (size_t p = 0; p < stg.states.size(); ++p) {
      if (!stg.states[p].is_protected) continue;
      absl::StatusOr<FifResult> fif = FifMetric(stg.states[t.from].encoding,
                                                stg.states[t.to].encoding,
                                                stg.states[p].encoding);
      if (!fif.ok()) return fif.status();
      if (!fif->overall) continue;
      RuleViolation v;
      v.rule = RuleId::kFifNonzero;
      v.locus.states = {stg.Name(t.from), stg.Name(t.to), stg.states[p].name};
      v.locus.transition = std::make_pair(stg.Name(t.from), stg.Name(t.to));
      v.locus.span = t.span;
      v.evidence = FifEvidence{*std::move(fif)};
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<RuleViolation> CheckHdRule(const Stg& stg, const RuleConfig& config) {
  std::vector<RuleViolation> out;
  for (const Transition& t : UnprotectedTransitions(stg)) {
    if (!Applies(t, config)) continue;
    absl::StatusOr<int> distance =
        HammingDistance(stg.states[t.from].encoding, stg.states[t.to].encoding);
    if (!distance.ok() || *distance == 1) continue;
    RuleViolation v;
    v.rule = RuleId::kHdNotOne;
    v.locus.states = {stg.Name(t.from), stg.Name(t.to)};
    v.locus.transition = std::make_pair(stg.Name(t.from), stg.Name(t.to));
    v.locus.span = t.span;
    v.evidence = HdEvidence{*distance};
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<RuleViolation> DetectStaticDeadlock(const Stg& stg) {
  std::set<int> reachable = ReachableStates(stg);
  std::vector<std::vector<int>> successors = Successors(stg);
  std::vector<RuleViolation> out;
  for (int s : reachable) {
    bool only_self = std::all_of(successors[s].begin(), successors[s].end(),
                                 [s](int next) { return next == s; });
    if (!only_self) continue;
    std::vector<std::string> from = EnteredFrom(stg, {s}, reachable);
    if (from.empty()) continue;
    RuleViolation v;
    v.rule = RuleId::kStaticDeadlock;
    v.locus.states = {stg.Name(s)};
    v.locus.span = StateSpan(stg, s);
    v.evidence = DeadlockEvidence{std::move(from)};
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<std::vector<int>> StronglyConnectedComponents(
    int node_count, const std::vector<std::vector<int>>& successors, const std::set<int>& nodes) {
  // Iterative Tarjan.
  std::vector<int> index(node_count, -1);
  std::vector<int> low(node_count, 0);
  std::vector<bool> on_stack(node_count, false);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int counter = 0;
  for (int root : nodes) {
    if (index[root] != -1) continue;
    std::vector<std::pair<int, size_t>> frames{{root, 0}};
    index[root] = low[root] = counter++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!frames.empty()) {
      auto& [v, next_child] = frames.back();
      if (next_child < successors[v].size()) {
        int w = successors[v][next_child++];
        if (!nodes.count(w)) continue;
        if (index[w] == -1) {
          index[w] = low[w] = counter++;
          stack.push_back(w);
          on_stack[w] = true;
          frames.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        std::vector<int> component;
        int w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          component.push_back(w);
        } while (w != v);
        std::sort(component.begin(), component.end());
        components.push_back(std::move(component));
      }
      int finished = v;
      frames.pop_back();
      if (!frames.empty()) {
        int parent = frames.back().first;
        low[parent] = std::min(low[parent], low[finished]);
      }
    }
  }
  std::sort(components.begin(), components.end());
  return components;
}

std::vector<RuleViolation> DetectTrapLoops(const Stg& stg) {
  std::set<int> reachable = ReachableStates(stg);
  std::vector<std::vector<int>> successors = Successors(stg);
  std::vector<RuleViolation> out;
  for (const std::vector<int>& component :
       StronglyConnectedComponents(static_cast<int>(stg.states.size()), successors, reachable)) {
    // Single-state sinks are static deadlocks.
    if (component.size() < 2) continue;
    if (component.size() == reachable.size()) continue;
    std::set<int> members(component.begin(), component.end());
    bool closed = true;
    for (int s : component) {
      for (int next : successors[s]) {
        if (!members.count(next)) closed = false;
      }
    }
    if (!closed) continue;
    RuleViolation v;
    v.rule = RuleId::kTrapLoop;
    Span span;
    for (int s : component) {
      v.locus.states.push_back(stg.Name(s));
      if (!span.valid() || StateSpan(stg, s).first_line < span.first_line) {
        span = StateSpan(stg, s);
      }
    }
    v.locus.span = span;
    v.evidence = TrapEvidence{v.locus.states, EnteredFrom(stg, members, reachable)};
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<RuleViolation> DetectUnreachableStates(const Stg& stg) {
  std::set<int> reachable = ReachableStates(stg);
  std::vector<RuleViolation> out;
  for (size_t i = 0; i < stg.states.size(); ++i) {
    int s = static_cast<int>(i);
    if (s == stg.reset_state || reachable.count(s)) continue;
    bool has_outgoing = std::any_of(
        stg.transitions.begin(), stg.transitions.end(),
        [s](const Transition& t) { return t.from == s && t.to != s && !t.guard.constant_false; });
    RuleViolation v;
    v.rule = RuleId::kUnreachableState;
    v.locus.states = {stg.Name(s)};
    v.locus.span = StateSpan(stg, s);
    v.evidence = UnreachableEvidence{has_outgoing};
    out.push_back(std::move(v));
  }
  return out;
}

std::vector<RuleViolation> DetectDuplicateEncodings(const Stg& stg) {
  std::vector<RuleViolation> out;
  for (size_t i = 0; i < stg.states.size(); ++i) {
    for (size_t j = i + 1; j < stg.states.size(); ++j) {
      if (stg.states[i].encoding != stg.states[j].encoding) continue;
      RuleViolation v;
      v.rule = RuleId::kDuplicateEncoding;
      v.locus.states = {stg.states[i].name, stg.states[j].name};
      v.locus.span = stg.states[j].declared_span;
      v.evidence = DuplicateEvidence{stg.states[i].encoding};
      out.push_back(std::move(v));
    }
  }
  return out;
}

std::vector<Encoding> UnusedEncodings(const Stg& stg, size_t cap, uint64_t* total) {
  std::set<uint64_t> used;
  for (const State& s : stg.states) used.insert(s.encoding.value());
  uint64_t space = stg.width >= 64 ? UINT64_MAX : (uint64_t{1} << stg.width);
  if (total != nullptr) *total = space - used.size();
  std::vector<Encoding> out;
  for (uint64_t code = 0; code < space && out.size() < cap; ++code) {
    if (!used.count(code)) out.emplace_back(stg.width, code);
  }
  return out;
}

std::vector<RuleViolation> CheckDefaultHandling(const FsmAst& ast, const Stg& stg) {
  if (ast.combinational.HasDefaultArm()) return {};
  uint64_t total = 0;
  std::vector<Encoding> unused = UnusedEncodings(stg, kUnusedEncodingCap, &total);
  if (total == 0) return {};
  RuleViolation v;
  v.rule = RuleId::kMissingDefault;
  v.locus.span = ast.combinational.case_span;
  v.evidence = MissingDefaultEvidence{std::move(unused), total};
  return {std::move(v)};
}

}  // namespace fsmguard
