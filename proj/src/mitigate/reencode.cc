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

#include "fsmguard/mitigate/reencode.h"

#include <algorithm>
#include <bit>
#include <deque>
#include <limits>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace fsmguard {
namespace {

bool Counted(const Stg& stg, const Transition& t) {
  return !t.is_self() && !stg.states[t.from].is_protected && !stg.states[t.to].is_protected;
}

bool Adjacent(uint64_t a, uint64_t b) { return std::popcount(a ^ b) == 1; }

// back_edges[k] lists (j, multiplicity) for counted edges between k and an
// earlier state j, in either direction.
std::vector<std::vector<std::pair<int, int>>> BackEdges(const Stg& stg) {
  size_t n = stg.states.size();
  std::vector<std::vector<int>> mult(n, std::vector<int>(n, 0));
  for (const Transition& t : stg.transitions) {
    if (!Counted(stg, t)) continue;
    int hi = std::max(t.from, t.to);
    int lo = std::min(t.from, t.to);
    ++mult[hi][lo];
  }
  std::vector<std::vector<std::pair<int, int>>> out(n);
  for (size_t k = 0; k < n; ++k) {
    for (size_t j = 0; j < k; ++j) {
      if (mult[k][j] > 0) out[k].push_back({static_cast<int>(j), mult[k][j]});
    }
  }
  return out;
}

class ExactSearch {
 public:
  ExactSearch(const Stg& stg, uint64_t budget)
      : n_(stg.states.size()),
        space_(uint64_t{1} << stg.width),
        back_(BackEdges(stg)),
        budget_(budget),
        codes_(n_),
        used_(space_, false) {}

  void Run() { Visit(0, 0); }
  bool aborted() const { return aborted_; }
  bool found() const { return best_cost_ != std::numeric_limits<int>::max(); }
  const std::vector<uint64_t>& best() const { return best_; }

 private:
  void Visit(size_t k, int cost) {
    if (cost >= best_cost_) return;
    if (k == n_) {
      best_cost_ = cost;
      best_ = codes_;
      return;
    }
    for (uint64_t c = 0; c < space_; ++c) {
      if (used_[c]) continue;
      if (++nodes_ > budget_) {
        aborted_ = true;
        return;
      }
      int added = 0;
      for (const auto& [j, m] : back_[k]) {
        if (!Adjacent(c, codes_[j])) added += m;
      }
      used_[c] = true;
      codes_[k] = c;
      Visit(k + 1, cost + added);
      used_[c] = false;
      // The first zero-cost leaf is the lexicographically smallest optimum.
      if (aborted_ || best_cost_ == 0) return;
    }
  }

  size_t n_;
  uint64_t space_;
  std::vector<std::vector<std::pair<int, int>>> back_;
  uint64_t budget_;
  uint64_t nodes_ = 0;
  bool aborted_ = false;
  int best_cost_ = std::numeric_limits<int>::max();
  std::vector<uint64_t> codes_;
  std::vector<uint64_t> best_;
  std::vector<bool> used_;
};

// Breadth-first over the unprotected subgraph (undirected) from the reset
// state; each state takes the free code that conflicts with the fewest
// already-labeled neighbors, lowest code first. Protected and unvisited
// states take the lowest free codes afterwards.
std::vector<uint64_t> GreedyLabeling(const Stg& stg) {
  size_t n = stg.states.size();
  uint64_t space = uint64_t{1} << stg.width;
  std::vector<std::vector<int>> adj(n);
  for (const Transition& t : stg.transitions) {
    if (!Counted(stg, t)) continue;
    adj[t.from].push_back(t.to);
    adj[t.to].push_back(t.from);
  }
  std::vector<int> order;
  std::vector<bool> seen(n, false);
  auto bfs = [&](int root) {
    std::deque<int> queue{root};
    seen[root] = true;
    while (!queue.empty()) {
      int s = queue.front();
      queue.pop_front();
      order.push_back(s);
      for (int t : adj[s]) {
        if (!seen[t]) {
          seen[t] = true;
          queue.push_back(t);
        }
      }
    }
  };
  if (stg.reset_state >= 0 && !stg.states[stg.reset_state].is_protected) bfs(stg.reset_state);
  for (size_t s = 0; s < n; ++s) {
    if (!seen[s] && !stg.states[s].is_protected) bfs(static_cast<int>(s));
  }
  for (size_t s = 0; s < n; ++s) {
    if (!seen[s]) order.push_back(static_cast<int>(s));
  }

  std::vector<uint64_t> codes(n, 0);
  std::vector<bool> labeled(n, false);
  std::vector<bool> used(space, false);
  for (int s : order) {
    uint64_t best_code = 0;
    int best_conflicts = std::numeric_limits<int>::max();
    for (uint64_t c = 0; c < space; ++c) {
      if (used[c]) continue;
      int conflicts = 0;
      for (int t : adj[s]) {
        if (labeled[t] && !Adjacent(c, codes[t])) ++conflicts;
      }
      if (conflicts < best_conflicts) {
        best_conflicts = conflicts;
        best_code = c;
      }
    }
    codes[s] = best_code;
    used[best_code] = true;
    labeled[s] = true;
  }
  return codes;
}

EncodingAssignment MakeAssignment(const Stg& stg, const std::vector<uint64_t>& codes,
                                  bool exact) {
  EncodingAssignment out;
  out.exact = exact;
  for (size_t i = 0; i < stg.states.size(); ++i) {
    out.codes.push_back({stg.states[i].name, Encoding(stg.width, codes[i])});
  }
  for (const Transition& t : stg.transitions) {
    if (Counted(stg, t) && !Adjacent(codes[t.from], codes[t.to])) {
      out.residual_edges.push_back({stg.Name(t.from), stg.Name(t.to)});
    }
  }
  return out;
}

}  // namespace

const Encoding* EncodingAssignment::Find(const std::string& state) const {
  for (const auto& [name, code] : codes) {
    if (name == state) return &code;
  }
  return nullptr;
}

int CountHdResiduals(const Stg& stg, const std::vector<uint64_t>& codes) {
  int residuals = 0;
  for (const Transition& t : stg.transitions) {
    if (Counted(stg, t) && !Adjacent(codes[t.from], codes[t.to])) ++residuals;
  }
  return residuals;
}

EncodingAssignment CurrentAssignment(const Stg& stg) {
  std::vector<uint64_t> codes;
  for (const State& s : stg.states) codes.push_back(s.encoding.value());
  return MakeAssignment(stg, codes, true);
}

absl::StatusOr<EncodingAssignment> ReencodeStates(const Stg& stg,
                                                  const ReencodeOptions& options) {
  if (stg.width < 1 || stg.width > 20) {
    return absl::InvalidArgumentError(absl::StrCat("unsupported code width ", stg.width));
  }
  uint64_t space = uint64_t{1} << stg.width;
  if (stg.states.size() > space) {
    return absl::InvalidArgumentError(absl::StrCat(stg.states.size(), " states do not fit in ",
                                                   stg.width, "-bit codes"));
  }
  std::vector<uint64_t> greedy = GreedyLabeling(stg);
  if (static_cast<int>(stg.states.size()) > options.exact_state_limit) {
    return MakeAssignment(stg, greedy, false);
  }
  ExactSearch search(stg, options.node_budget);
  search.Run();
  if (!search.aborted()) return MakeAssignment(stg, search.best(), true);
  if (search.found() && CountHdResiduals(stg, search.best()) <= CountHdResiduals(stg, greedy)) {
    return MakeAssignment(stg, search.best(), false);
  }
  return MakeAssignment(stg, greedy, false);
}

FsmAst ApplyEncoding(const FsmAst& ast, const EncodingAssignment& assignment) {
  FsmAst out = ast;
  for (Parameter& p : out.parameters) {
    if (const Encoding* code = assignment.Find(p.name)) p.value = *code;
  }
  return out;
}

}  // namespace fsmguard
