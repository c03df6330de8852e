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

#include "oracle/oracles.h"

#include <algorithm>
#include <bitset>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fsmguard::testing {

std::string ReadTestData(const std::string& name) {
  std::ifstream in(std::string(FSMGUARD_TEST_DATA_DIR) + "/" + name, std::ios::binary);
  if (!in) throw std::runtime_error("missing fixture " + name);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

std::vector<int> FifTruthTable(const std::string& bx, const std::string& by,
                               const std::string& bp) {
  // Rows indexed by (bx, by, bp) read as a 3-bit number.
  static const int kTable[8] = {
      /*000*/ 0, /*001*/ 0, /*010*/ 1, /*011*/ 1,
      /*100*/ 1, /*101*/ 1, /*110*/ 0, /*111*/ 1,
  };
  std::vector<int> out;
  for (size_t i = 0; i < bx.size(); ++i) {
    int row = (bx[i] - '0') * 4 + (by[i] - '0') * 2 + (bp[i] - '0');
    out.push_back(kTable[row]);
  }
  return out;
}

Stg RandomStg(uint64_t seed, int max_states, int width) {
  std::mt19937_64 rng(seed);
  auto pick = [&rng](int n) { return static_cast<int>(rng() % static_cast<uint64_t>(n)); };
  Stg stg;
  stg.width = width;
  int n = 1 + pick(max_states);
  for (int i = 0; i < n; ++i) {
    State s;
    s.name = "S" + std::to_string(i);
    s.encoding = Encoding(width, static_cast<uint64_t>(pick(1 << width)));
    s.declared_span = Span{i + 1, i + 1};
    s.has_arm = true;
    stg.states.push_back(s);
  }
  for (int from = 0; from < n; ++from) {
    int edges = 1 + pick(3);
    for (int e = 0; e < edges; ++e) {
      Transition t;
      t.from = from;
      t.to = pick(n);
      t.guard.kind = GuardKind::kAlways;
      t.span = Span{from + 1, from + 1};
      stg.transitions.push_back(t);
    }
  }
  stg.reset_state = pick(n);
  return stg;
}

std::vector<std::vector<bool>> Closure(const Stg& stg) {
  size_t n = stg.states.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (const Transition& t : stg.transitions) {
    if (!t.guard.constant_false) reach[t.from][t.to] = true;
  }
  for (size_t k = 0; k < n; ++k) {
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
      }
    }
  }
  return reach;
}

namespace {

std::vector<bool> ReachableMask(const Stg& stg, const std::vector<std::vector<bool>>& reach) {
  std::vector<bool> mask(stg.states.size(), false);
  for (size_t j = 0; j < stg.states.size(); ++j) {
    mask[j] = static_cast<int>(j) == stg.reset_state || reach[stg.reset_state][j];
  }
  return mask;
}

}  // namespace

std::set<std::string> OracleReachable(const Stg& stg) {
  std::vector<std::vector<bool>> reach = Closure(stg);
  std::vector<bool> mask = ReachableMask(stg, reach);
  std::set<std::string> out;
  for (size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) out.insert(stg.states[i].name);
  }
  return out;
}

std::set<std::string> OracleDeadlocks(const Stg& stg) {
  std::vector<bool> reachable = ReachableMask(stg, Closure(stg));
  std::set<std::string> out;
  for (size_t s = 0; s < stg.states.size(); ++s) {
    if (!reachable[s]) continue;
    std::set<int> successors;
    std::set<int> predecessors;
    for (const Transition& t : stg.transitions) {
      if (t.guard.constant_false) continue;
      if (t.from == static_cast<int>(s)) successors.insert(t.to);
      if (t.to == static_cast<int>(s) && t.from != static_cast<int>(s) && reachable[t.from]) {
        predecessors.insert(t.from);
      }
    }
    bool stuck = successors.empty() || successors == std::set<int>{static_cast<int>(s)};
    if (stuck && !predecessors.empty()) out.insert(stg.states[s].name);
  }
  return out;
}

std::set<std::vector<std::string>> OracleTraps(const Stg& stg) {
  std::vector<std::vector<bool>> reach = Closure(stg);
  std::vector<bool> reachable = ReachableMask(stg, reach);
  size_t n = stg.states.size();
  size_t reachable_count = std::count(reachable.begin(), reachable.end(), true);
  std::set<std::vector<std::string>> out;
  std::vector<bool> assigned(n, false);
  for (size_t i = 0; i < n; ++i) {
    if (!reachable[i] || assigned[i]) continue;
    // Component of i: mutually reachable states, plus i itself.
    std::vector<size_t> members{i};
    for (size_t j = 0; j < n; ++j) {
      if (j != i && reachable[j] && reach[i][j] && reach[j][i]) members.push_back(j);
    }
    for (size_t m : members) assigned[m] = true;
    if (members.size() < 2 || members.size() == reachable_count) continue;
    std::set<size_t> in(members.begin(), members.end());
    bool sink = true;
    for (const Transition& t : stg.transitions) {
      if (t.guard.constant_false) continue;
      if (in.count(t.from) && !in.count(t.to)) sink = false;
    }
    if (!sink) continue;
    std::vector<std::string> names;
    for (size_t m : members) names.push_back(stg.states[m].name);
    std::sort(names.begin(), names.end());
    out.insert(names);
  }
  return out;
}

int CountResiduals(const Stg& stg, const std::vector<uint64_t>& codes) {
  int residuals = 0;
  for (const Transition& t : stg.transitions) {
    if (t.from == t.to) continue;
    if (stg.states[t.from].is_protected || stg.states[t.to].is_protected) continue;
    if (std::bitset<64>(codes[t.from] ^ codes[t.to]).count() != 1) ++residuals;
  }
  return residuals;
}

BruteForceResult BruteForceEncoding(const Stg& stg, int width) {
  size_t n = stg.states.size();
  uint64_t space = uint64_t{1} << width;
  BruteForceResult result;
  result.min_residuals = -1;
  std::vector<uint64_t> codes(n);
  std::vector<bool> used(space, false);
  std::function<void(size_t)> assign = [&](size_t k) {
    if (k == n) {
      ++result.assignments_tried;
      int r = CountResiduals(stg, codes);
      // Codes are tried in ascending order, so the first optimum found is
      // the lexicographically smallest.
      if (result.min_residuals < 0 || r < result.min_residuals) {
        result.min_residuals = r;
        result.best = codes;
      }
      return;
    }
    for (uint64_t c = 0; c < space; ++c) {
      if (used[c]) continue;
      used[c] = true;
      codes[k] = c;
      assign(k + 1);
      used[c] = false;
    }
  };
  assign(0);
  return result;
}

std::string RandomFsmSource(uint64_t seed) {
  std::mt19937_64 rng(seed);
  auto pick = [&rng](int n) { return static_cast<int>(rng() % static_cast<uint64_t>(n)); };
  int states = 2 + pick(5);
  int width = 3;
  std::vector<std::string> inputs = {"a", "b", "c"};
  std::ostringstream out;
  bool ansi = pick(2) == 0;
  if (ansi) {
    out << "module rnd (\n  input clk,\n  input rst,\n  input a, input b, input c,\n"
        << "  output reg y\n);\n";
  } else {
    out << "module rnd(clk, rst, a, b, c, y);\ninput clk;\ninput rst;\ninput a, b, c;\n"
        << "output y;\nreg y;\n";
  }
  for (int i = 0; i < states; ++i) {
    out << "parameter S" << i << " = 3'b" << std::bitset<3>(i).to_string() << ";";
    if (pick(3) == 0) out << " // state " << i;
    out << "\n";
  }
  out << "reg [" << width - 1 << ":0] cs, ns;\n";
  out << "always @(posedge clk or posedge rst) begin\n  if (rst) cs <= S0;\n"
      << "  else cs <= ns;\nend\n";
  out << (pick(2) ? "always @(*) begin\n" : "always @(cs or a or b or c) begin\n");
  bool leading = pick(2) == 0;
  if (leading) out << "  ns = S" << pick(states) << ";\n  y = 0;\n";
  out << "  case (cs)\n";
  auto target = [&]() { return "S" + std::to_string(pick(states)); };
  auto cond = [&]() {
    std::string in = inputs[pick(3)];
    switch (pick(4)) {
      case 0:
        return in;
      case 1:
        return "!" + in;
      case 2:
        return in + " == 1";
      default:
        return in + " && " + inputs[pick(3)];
    }
  };
  for (int i = 0; i < states; ++i) {
    if (pick(6) == 0) continue;
    out << "    S" << i << ": begin\n";
    if (pick(2)) out << "      y = " << pick(2) << ";\n";
    switch (pick(4)) {
      case 0:
        out << "      ns = " << target() << ";\n";
        break;
      case 1:
        out << "      if (" << cond() << ") ns = " << target() << ";\n      else ns = "
            << target() << ";\n";
        break;
      case 2:
        out << "      ns = " << target() << ";\n      if (" << cond() << ") begin\n"
            << "        ns = " << target() << ";\n      end\n";
        break;
      default:
        out << "      if (" << cond() << ") ns = " << target() << ";\n      else if ("
            << cond() << ") ns = " << target() << ";\n      else ns = cs;\n";
        break;
    }
    out << "    end\n";
  }
  if (pick(2)) out << "    default: ns = S0;\n";
  out << "  endcase\nend\nendmodule\n";
  return out.str();
}

namespace {

std::vector<std::string> SplitLines(const std::string& text) {
  std::vector<std::string> lines;
  std::string line;
  for (char c : text) {
    if (c == '\n') {
      lines.push_back(line);
      line.clear();
    } else {
      line.push_back(c);
    }
  }
  if (!line.empty()) lines.push_back(line);
  return lines;
}

bool InAny(const std::vector<Span>& spans, int line) {
  for (const Span& s : spans) {
    if (s.Contains(line)) return true;
  }
  return false;
}

}  // namespace

bool DiffConfinedToSpans(const std::string& base, const std::string& edited,
                         const std::vector<Span>& modified, const std::vector<Span>& removed) {
  std::vector<std::string> b;
  std::vector<std::string> all_base = SplitLines(base);
  for (size_t i = 0; i < all_base.size(); ++i) {
    if (!InAny(removed, static_cast<int>(i) + 1)) b.push_back(all_base[i]);
  }
  std::vector<std::string> e = SplitLines(edited);
  // Alternate unchanged segments and modified spans of the edited text.
  std::vector<std::vector<std::string>> segments(1);
  std::vector<std::vector<std::string>> spans;
  for (size_t i = 0; i < e.size(); ++i) {
    bool in_span = InAny(modified, static_cast<int>(i) + 1);
    bool prev_in_span = i > 0 && InAny(modified, static_cast<int>(i));
    if (in_span) {
      if (!prev_in_span) spans.emplace_back();
      spans.back().push_back(e[i]);
    } else {
      if (prev_in_span) segments.emplace_back();
      segments.back().push_back(e[i]);
    }
  }
  if (segments.size() != spans.size() + 1) return false;
  const std::vector<std::string>& last = segments.back();
  if (last.size() > b.size()) return false;
  size_t tail = b.size() - last.size();
  if (!std::equal(last.begin(), last.end(), b.begin() + static_cast<std::ptrdiff_t>(tail))) {
    return false;
  }
  size_t pos = 0;
  for (size_t k = 0; k + 1 < segments.size(); ++k) {
    const std::vector<std::string>& seg = segments[k];
    size_t found = std::string::npos;
    if (k == 0) {
      if (seg.size() <= tail && std::equal(seg.begin(), seg.end(), b.begin())) found = 0;
    } else {
      for (size_t start = pos; start + seg.size() <= tail; ++start) {
        if (std::equal(seg.begin(), seg.end(), b.begin() + static_cast<std::ptrdiff_t>(start))) {
          found = start;
          break;
        }
      }
    }
    if (found == std::string::npos) return false;
    size_t gap_start = found + seg.size();
    size_t gap_end = tail;
    if (k + 2 < segments.size()) {
      // The replaced base lines end where the next segment is found; the
      // next iteration verifies it, so only compare when it is adjacent.
      const std::vector<std::string>& next = segments[k + 1];
      for (size_t start = gap_start; start + next.size() <= tail; ++start) {
        if (std::equal(next.begin(), next.end(), b.begin() + static_cast<std::ptrdiff_t>(start))) {
          gap_end = start;
          break;
        }
      }
    }
    std::vector<std::string> gap(b.begin() + static_cast<std::ptrdiff_t>(gap_start),
                                 b.begin() + static_cast<std::ptrdiff_t>(gap_end));
    if (gap == spans[k]) return false;
    pos = gap_end;
  }
  return true;
}

}  // namespace fsmguard::testing
