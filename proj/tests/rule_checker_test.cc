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

#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fsmguard/rules/check_report.h"
#include "fsmguard/rules/fif.h"
#include "fsmguard/rules/rules.h"
#include "fsmguard/rtl/parser.h"
#include "fsmguard/stg/extract.h"
#include "gtest/gtest.h"
#include "json.hpp"
#include "oracle/oracles.h"

namespace fsmguard {
namespace {

using ::fsmguard::testing::FifTruthTable;
using ::fsmguard::testing::OracleDeadlocks;
using ::fsmguard::testing::OracleTraps;
using ::fsmguard::testing::RandomStg;
using ::fsmguard::testing::ReadTestData;

Encoding Bits(const std::string& bits) { return *Encoding::FromBits(bits); }

CheckReport Check(const std::string& fixture, std::vector<std::string> protected_names = {},
                  RuleConfig config = {}) {
  return RunAllChecks(SourceText{ReadTestData(fixture), fixture}, protected_names, config);
}

std::string ToBits(uint64_t v, int width) { return Encoding(width, v).ToBits(); }

TEST(FifTest, WorkedExamples) {
  FifResult a = *FifMetric(Bits("010"), Bits("011"), Bits("000"));
  EXPECT_EQ(a.PerBitValues(), (std::vector<int>{0, 0, 1}));
  EXPECT_FALSE(a.overall);
  FifResult b = *FifMetric(Bits("1000"), Bits("1100"), Bits("1110"));
  EXPECT_EQ(b.PerBitValues(), (std::vector<int>{1, 1, 0, 0}));
  EXPECT_FALSE(b.overall);
  EXPECT_EQ(b.per_bit[0].triple.index, 0);
  EXPECT_TRUE(b.per_bit[0].triple.bx);
}

TEST(FifTest, AllOnes) {
  for (int width = 1; width <= 12; ++width) {
    Encoding ones(width, ~uint64_t{0});
    FifResult r = *FifMetric(ones, ones, ones);
    EXPECT_TRUE(r.overall);
    std::vector<int> bits = r.PerBitValues();
    EXPECT_EQ(std::count(bits.begin(), bits.end(), 1), width);
  }
}

TEST(FifTest, WidthMismatch) { EXPECT_FALSE(FifMetric(Bits("01"), Bits("011"), Bits("000")).ok()); }

TEST(FifTest, TruthTableOracleAll512Triples) {
  for (uint64_t x = 0; x < 8; ++x) {
    for (uint64_t y = 0; y < 8; ++y) {
      for (uint64_t p = 0; p < 8; ++p) {
        std::vector<int> expected = FifTruthTable(ToBits(x, 3), ToBits(y, 3), ToBits(p, 3));
        FifResult r = *FifMetric(Encoding(3, x), Encoding(3, y), Encoding(3, p));
        EXPECT_EQ(r.PerBitValues(), expected);
        bool product = std::all_of(expected.begin(), expected.end(), [](int v) { return v; });
        EXPECT_EQ(r.overall, product);
      }
    }
  }
}

TEST(FifTest, InvariantUnderBitPermutation) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 500; ++trial) {
    int width = 2 + static_cast<int>(rng() % 8);
    std::string x = ToBits(rng(), width), y = ToBits(rng(), width), p = ToBits(rng(), width);
    std::vector<int> perm(width);
    for (int i = 0; i < width; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    std::string px, py, pp;
    for (int i : perm) {
      px += x[i];
      py += y[i];
      pp += p[i];
    }
    EXPECT_EQ(FifMetric(Bits(x), Bits(y), Bits(p))->overall,
              FifMetric(Bits(px), Bits(py), Bits(pp))->overall);
  }
}

TEST(FifTest, SelfTransitionClosedForm) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 500; ++trial) {
    int width = 1 + static_cast<int>(rng() % 10);
    Encoding x(width, rng()), p(width, rng());
    bool closed = (x.value() & p.value()) == x.value() && x.value() == (uint64_t{1} << width) - 1;
    EXPECT_EQ(FifMetric(x, x, p)->overall, closed);
  }
}

TEST(FifRuleTest, RsaHasNoViolation) {
  Stg stg = *ExtractStg(*ParseSource(SourceText{ReadTestData("rsa_fsm.v"), "rsa"}).ast, {});
  absl::StatusOr<std::vector<RuleViolation>> v = CheckFifRule(stg);
  ASSERT_TRUE(v.ok());
  EXPECT_TRUE(v->empty());
}

TEST(FifRuleTest, AllOnesEdgeViolates) {
  Stg stg;
  stg.width = 3;
  stg.states = {State{"A", Bits("111"), false, Span{1, 1}, true},
                State{"B", Bits("000"), false, Span{2, 2}, true},
                State{"P", Bits("111"), true, Span{3, 3}, true}};
  // Duplicate code for A and P is irrelevant to FIF.
  Transition t;
  t.from = 0;
  t.to = 1;
  t.span = Span{5, 5};
  stg.transitions.push_back(t);
  absl::StatusOr<std::vector<RuleViolation>> v = CheckFifRule(stg);
  ASSERT_TRUE(v.ok());
  ASSERT_EQ(v->size(), 1u);
  EXPECT_EQ((*v)[0].locus.states, (std::vector<std::string>{"A", "B", "P"}));
  EXPECT_TRUE(std::get<FifEvidence>((*v)[0].evidence).result.overall);
}

TEST(FifRuleTest, EmptyProtectedIsError) {
  Stg stg = RandomStg(1, 4, 3);
  absl::StatusOr<std::vector<RuleViolation>> v = CheckFifRule(stg);
  ASSERT_FALSE(v.ok());
  EXPECT_EQ(v.status().message(), "FIF rule requires a protected state");
}

TEST(HdRuleTest, Listing7Golden) {
  Stg stg = *ExtractStg(*ParseSource(SourceText{ReadTestData("listing7.v"), "l7"}).ast,
                        {"WAIT_KEY"});
  std::map<std::pair<std::string, std::string>, int> found;
  for (const RuleViolation& v : CheckHdRule(stg)) {
    found[*v.locus.transition] = std::get<HdEvidence>(v.evidence).distance;
  }
  std::map<std::pair<std::string, std::string>, int> expected = {
      {{"WAIT_DATA", "INITIAL_ROUND"}, 2},
      {{"DO_ROUND", "FINAL_ROUND"}, 3},
      {{"FINAL_ROUND", "WAIT_DATA"}, 2},
  };
  EXPECT_EQ(found, expected);
}

TEST(HdRuleTest, Listing8Residual) {
  Stg stg = *ExtractStg(*ParseSource(SourceText{ReadTestData("listing8.v"), "l8"}).ast,
                        {"WAIT_KEY"});
  std::vector<RuleViolation> v = CheckHdRule(stg);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].locus.states, (std::vector<std::string>{"FINAL_ROUND", "WAIT_DATA"}));
  EXPECT_EQ(std::get<HdEvidence>(v[0].evidence).distance, 3);
}

TEST(HdRuleTest, MatchesUnprotectedTransitionsExactly) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Stg stg = RandomStg(seed, 8, 3);
    for (size_t i = 0; i < stg.states.size(); ++i) stg.states[i].is_protected = i == 0;
    for (bool self : {false, true}) {
      RuleConfig config;
      config.include_self_edges = self;
      std::vector<RuleViolation> v = CheckHdRule(stg, config);
      size_t k = 0;
      for (const Transition& t : UnprotectedTransitions(stg)) {
        if (t.is_self() && !self) continue;
        int hd = *HammingDistance(stg.states[t.from].encoding, stg.states[t.to].encoding);
        if (hd == 1) continue;
        ASSERT_LT(k, v.size());
        EXPECT_EQ(v[k].locus.states[0], stg.Name(t.from));
        EXPECT_EQ(v[k].locus.states[1], stg.Name(t.to));
        EXPECT_EQ(std::get<HdEvidence>(v[k].evidence).distance, hd);
        ++k;
      }
      EXPECT_EQ(k, v.size());
    }
  }
}

TEST(DeadlockTest, Listing4) {
  CheckReport r = Check("listing4.v");
  ASSERT_EQ(r.Count(RuleId::kStaticDeadlock), 1u);
  const RuleViolation& v = r.violations[0];
  EXPECT_EQ(v.locus.states, std::vector<std::string>{"DEADLOCK_STATE"});
  EXPECT_EQ(std::get<DeadlockEvidence>(v.evidence).entered_from,
            std::vector<std::string>{"IDLE"});
}

TEST(DeadlockTest, Listing3Clean) { EXPECT_EQ(Check("listing3.v").Count(RuleId::kStaticDeadlock), 0u); }

TEST(DeadlockTest, ResetSelfLoopIsNotDeadlock) {
  Stg stg = RandomStg(0, 1, 2);
  stg.transitions.clear();
  Transition t;
  stg.transitions.push_back(t);
  EXPECT_TRUE(DetectStaticDeadlock(stg).empty());
}

TEST(GraphOracleTest, DeadlockAndTrapsAgreeOn200RandomGraphs) {
  for (uint64_t seed = 0; seed < 200; ++seed) {
    Stg stg = RandomStg(seed, 8, 3);
    std::set<std::string> deadlocks;
    for (const RuleViolation& v : DetectStaticDeadlock(stg)) deadlocks.insert(v.locus.states[0]);
    EXPECT_EQ(deadlocks, OracleDeadlocks(stg)) << "seed " << seed;
    std::set<std::vector<std::string>> traps;
    for (const RuleViolation& v : DetectTrapLoops(stg)) {
      std::vector<std::string> members = v.locus.states;
      std::sort(members.begin(), members.end());
      traps.insert(members);
    }
    EXPECT_EQ(traps, OracleTraps(stg)) << "seed " << seed;
  }
}

TEST(GraphOracleTest, DeadlockAndTrapDisjoint) {
  for (uint64_t seed = 0; seed < 300; ++seed) {
    Stg stg = RandomStg(seed, 8, 3);
    std::set<std::string> deadlocked;
    for (const RuleViolation& v : DetectStaticDeadlock(stg)) deadlocked.insert(v.locus.states[0]);
    for (const RuleViolation& v : DetectTrapLoops(stg)) {
      for (const std::string& s : v.locus.states) EXPECT_FALSE(deadlocked.count(s));
    }
  }
}

TEST(TrapTest, TwoStateCycle) {
  std::string text = R"(module m (input clk, input rst, input go);
parameter R = 2'b00;
parameter A = 2'b01;
parameter B = 2'b10;
reg [1:0] cs, ns;
always @(posedge clk) if (rst) cs <= R; else cs <= ns;
always @(*) begin
  case (cs)
    R: if (go) ns = A; else ns = R;
    A: ns = B;
    B: ns = A;
    default: ns = R;
  endcase
end
endmodule
)";
  CheckReport r = RunAllChecks(SourceText{text, "t"}, {});
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].rule, RuleId::kTrapLoop);
  EXPECT_EQ(r.violations[0].locus.states, (std::vector<std::string>{"A", "B"}));
}

TEST(TrapTest, Listing3WholeCycleNotTrap) {
  EXPECT_EQ(Check("listing3.v").Count(RuleId::kTrapLoop), 0u);
}

TEST(UnreachableTest, Listing6) {
  CheckReport r = Check("listing6.v");
  ASSERT_EQ(r.Count(RuleId::kUnreachableState), 1u);
  for (const RuleViolation& v : r.violations) {
    if (v.rule != RuleId::kUnreachableState) continue;
    EXPECT_EQ(v.locus.states, std::vector<std::string>{"s3"});
    EXPECT_TRUE(std::get<UnreachableEvidence>(v.evidence).has_outgoing);
  }
}

TEST(UnreachableTest, Listing7None) {
  EXPECT_EQ(Check("listing7.v", {"WAIT_KEY"}).Count(RuleId::kUnreachableState), 0u);
}

TEST(UnreachableTest, IsolatedState) {
  std::string text = R"(module m (input clk, input rst, input go);
parameter A = 2'b00;
parameter B = 2'b01;
parameter Z = 2'b10;
reg [1:0] cs, ns;
always @(posedge clk) if (rst) cs <= A; else cs <= ns;
always @(*) begin
  case (cs)
    A: if (go) ns = B; else ns = A;
    B: ns = A;
  endcase
end
endmodule
)";
  CheckReport r = RunAllChecks(SourceText{text, "t"}, {});
  ASSERT_EQ(r.Count(RuleId::kUnreachableState), 1u);
  const RuleViolation& v = r.violations[0];
  EXPECT_EQ(v.locus.states, std::vector<std::string>{"Z"});
  EXPECT_FALSE(std::get<UnreachableEvidence>(v.evidence).has_outgoing);
}

TEST(DuplicateTest, PairsAndChoose) {
  Stg stg = RandomStg(2, 1, 3);
  stg.states.clear();
  for (int i = 0; i < 4; ++i) {
    stg.states.push_back(State{"S" + std::to_string(i), Bits(i < 3 ? "010" : "001"), false,
                               Span{i + 1, i + 1}, true});
  }
  EXPECT_EQ(DetectDuplicateEncodings(stg).size(), 3u);
  stg.states.resize(2);
  std::vector<RuleViolation> v = DetectDuplicateEncodings(stg);
  ASSERT_EQ(v.size(), 1u);
  EXPECT_EQ(v[0].locus.states, (std::vector<std::string>{"S0", "S1"}));
  EXPECT_TRUE(DetectDuplicateEncodings(
                  *ExtractStg(*ParseSource(SourceText{ReadTestData("listing7.v"), "l"}).ast, {}))
                  .empty());
}

TEST(DefaultTest, Listing7UnusedCodes) {
  CheckReport r = Check("listing7.v", {"WAIT_KEY"});
  ASSERT_EQ(r.Count(RuleId::kMissingDefault), 1u);
  const RuleViolation& v = r.violations.back();
  ASSERT_EQ(v.rule, RuleId::kMissingDefault);
  std::vector<std::string> codes;
  for (const Encoding& e : std::get<MissingDefaultEvidence>(v.evidence).unused) {
    codes.push_back(e.ToBits());
  }
  EXPECT_EQ(codes, (std::vector<std::string>{"101", "110", "111"}));
}

TEST(DefaultTest, Listing8HasDefault) {
  EXPECT_EQ(Check("listing8.v", {"WAIT_KEY"}).Count(RuleId::kMissingDefault), 0u);
}

TEST(DefaultTest, FullyCoveredOneBit) {
  std::string text = R"(module m (input clk, input rst, input go);
parameter A = 1'b0;
parameter B = 1'b1;
reg cs, ns;
always @(posedge clk) if (rst) cs <= A; else cs <= ns;
always @(*) begin
  case (cs)
    A: if (go) ns = B; else ns = A;
    B: ns = A;
  endcase
end
endmodule
)";
  EXPECT_TRUE(RunAllChecks(SourceText{text, "t"}, {}).violations.empty());
}

RuleConfig NoFif() {
  RuleConfig config;
  config.disabled.insert(RuleId::kFifNonzero);
  return config;
}

TEST(RunAllChecksTest, Listing7Exact) {
  CheckReport r = Check("listing7.v", {"WAIT_KEY"}, NoFif());
  std::vector<RuleId> rules;
  for (const RuleViolation& v : r.violations) rules.push_back(v.rule);
  EXPECT_EQ(rules, (std::vector<RuleId>{RuleId::kHdNotOne, RuleId::kHdNotOne, RuleId::kHdNotOne,
                                        RuleId::kMissingDefault}));
}

TEST(RunAllChecksTest, Listing7FifFlagsComplementEdge) {
  CheckReport r = Check("listing7.v", {"WAIT_KEY"});
  ASSERT_EQ(r.Count(RuleId::kFifNonzero), 1u);
  EXPECT_EQ(r.violations[0].locus.states,
            (std::vector<std::string>{"DO_ROUND", "FINAL_ROUND", "WAIT_KEY"}));
  EXPECT_EQ(r.violations.size(), 5u);
}

TEST(RunAllChecksTest, Listing3CleanWithFifDisabled) {
  RuleConfig config;
  config.disabled.insert(RuleId::kFifNonzero);
  CheckReport r = Check("listing3.v", {}, config);
  EXPECT_TRUE(r.violations.empty());
  ASSERT_EQ(r.not_evaluated.size(), 1u);
  EXPECT_EQ(r.not_evaluated[0].rule, RuleId::kHdNotOne);
}

TEST(RunAllChecksTest, Listing4OneDeadlock) {
  CheckReport r = Check("listing4.v");
  ASSERT_EQ(r.violations.size(), 1u);
  EXPECT_EQ(r.violations[0].rule, RuleId::kStaticDeadlock);
}

TEST(RunAllChecksTest, ParseFailureOnlyDiagnostics) {
  CheckReport r = Check("listing1.v");
  EXPECT_FALSE(r.parsed);
  EXPECT_TRUE(r.violations.empty());
  EXPECT_TRUE(HasErrors(r.diagnostics));
}

TEST(RunAllChecksTest, LintDoesNotBlock) {
  CheckReport r = Check("listing6.v");
  EXPECT_TRUE(r.parsed);
  EXPECT_FALSE(HasErrors(r.diagnostics));
  EXPECT_TRUE(r.stg.has_value());
}

TEST(RunAllChecksTest, EvidenceMatchesRule) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    std::string text = ::fsmguard::testing::RandomFsmSource(seed);
    CheckReport r = RunAllChecks(SourceText{text, "rnd"}, {"S0"});
    for (const RuleViolation& v : r.violations) EXPECT_EQ(RuleForEvidence(v.evidence), v.rule);
    for (size_t i = 1; i < r.violations.size(); ++i) {
      const RuleViolation& a = r.violations[i - 1];
      const RuleViolation& b = r.violations[i];
      EXPECT_TRUE(a.rule < b.rule ||
                  (a.rule == b.rule && a.locus.span.first_line <= b.locus.span.first_line));
    }
  }
}

TEST(ReportTest, JsonIsDeterministicAndVersioned) {
  std::string a = CheckReportToJson(Check("listing7.v", {"WAIT_KEY"}, NoFif()));
  std::string b = CheckReportToJson(Check("listing7.v", {"WAIT_KEY"}, NoFif()));
  EXPECT_EQ(a, b);
  nlohmann::json j = nlohmann::json::parse(a);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["violations"].size(), 4u);
  EXPECT_EQ(j["violations"][0]["rule"], "HD_NOT_ONE");
  EXPECT_EQ(j["violations"][3]["evidence"]["unused"],
            nlohmann::json::array({"101", "110", "111"}));
  EXPECT_EQ(j["config"]["include_self_edges"], false);
  EXPECT_EQ(j["config"]["disabled"], nlohmann::json::array({"FIF_NONZERO"}));
}

TEST(ReportTest, HumanText) {
  std::string text = FormatCheckReportText(Check("listing7.v", {"WAIT_KEY"}));
  EXPECT_NE(text.find("Rule HD_NOT_ONE: violated, explanation: transition WAIT_DATA -> "
                      "INITIAL_ROUND has Hamming distance 2, line no: "),
            std::string::npos);
  EXPECT_NE(text.find("Rule STATIC_DEADLOCK: not violated"), std::string::npos);
  std::string no_protected = FormatCheckReportText(Check("listing3.v"));
  EXPECT_NE(no_protected.find("Rule FIF_NONZERO: not evaluated"), std::string::npos);
}

}  // namespace
}  // namespace fsmguard
