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
#include <random>
#include <set>
#include <string>
#include <vector>

#include "fsmguard/inject/injector.h"
#include "fsmguard/mitigate/mitigation.h"
#include "fsmguard/mitigate/reencode.h"
#include "fsmguard/rtl/emitter.h"
#include "fsmguard/rtl/parser.h"
#include "fsmguard/rules/check_report.h"
#include "fsmguard/stg/extract.h"
#include "gtest/gtest.h"
#include "oracle/oracles.h"

namespace fsmguard {
namespace {

using ::fsmguard::testing::BruteForceEncoding;
using ::fsmguard::testing::BruteForceResult;
using ::fsmguard::testing::CountResiduals;
using ::fsmguard::testing::RandomStg;
using ::fsmguard::testing::ReadTestData;

FsmAst Load(const std::string& fixture) {
  ParseResult r = ParseSource(SourceText{ReadTestData(fixture), fixture});
  EXPECT_TRUE(r.ok()) << fixture;
  return *r.ast;
}

Stg LoadStg(const std::string& fixture, std::vector<std::string> protected_names) {
  return *ExtractStg(Load(fixture), protected_names);
}

std::vector<uint64_t> Codes(const EncodingAssignment& a) {
  std::vector<uint64_t> out;
  for (const auto& entry : a.codes) out.push_back(entry.second.value());
  return out;
}

bool Injective(const EncodingAssignment& a) {
  std::set<uint64_t> seen;
  for (const auto& entry : a.codes) {
    if (!seen.insert(entry.second.value()).second) return false;
  }
  return true;
}

TEST(AddDefaultArmTest, Listing7MatchesListing8Arms) {
  absl::StatusOr<FsmAst> out = AddDefaultArm(Load("listing7.v"), "WAIT_KEY");
  ASSERT_TRUE(out.ok()) << out.status();
  FsmAst l8 = Load("listing8.v");
  ASSERT_EQ(out->combinational.arms.size(), l8.combinational.arms.size());
  for (size_t i = 0; i < l8.combinational.arms.size(); ++i) {
    EXPECT_EQ(out->combinational.arms[i].labels, l8.combinational.arms[i].labels);
    EXPECT_TRUE(
        StructurallyEqual(out->combinational.arms[i].body, l8.combinational.arms[i].body));
  }
  EXPECT_EQ(RunAllChecks(EmitVerilog(*out), {"WAIT_KEY"}).Count(RuleId::kMissingDefault), 0u);
}

TEST(AddDefaultArmTest, Errors) {
  EXPECT_EQ(AddDefaultArm(Load("listing7.v"), "NOWHERE").status().code(),
            absl::StatusCode::kInvalidArgument);
  EXPECT_EQ(AddDefaultArm(Load("listing8.v"), "WAIT_KEY").status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(ReencodeTest, Listing7ZeroResidualsLexFirst) {
  Stg stg = LoadStg("listing7.v", {"WAIT_KEY"});
  absl::StatusOr<EncodingAssignment> a = ReencodeStates(stg);
  ASSERT_TRUE(a.ok());
  EXPECT_TRUE(a->exact);
  EXPECT_TRUE(a->residual_edges.empty());
  EXPECT_TRUE(Injective(*a));
  BruteForceResult oracle = BruteForceEncoding(stg, 3);
  EXPECT_EQ(oracle.min_residuals, 0);
  EXPECT_EQ(Codes(*a), oracle.best);
  EXPECT_EQ(a->Find("WAIT_KEY")->ToBits(), "000");
  EXPECT_EQ(a->Find("WAIT_DATA")->ToBits(), "001");
  EXPECT_EQ(a->Find("INITIAL_ROUND")->ToBits(), "011");
  EXPECT_EQ(a->Find("DO_ROUND")->ToBits(), "111");
  EXPECT_EQ(a->Find("FINAL_ROUND")->ToBits(), "101");
}

TEST(ReencodeTest, Listing8AssignmentLeavesOneResidual) {
  Stg stg = LoadStg("listing8.v", {"WAIT_KEY"});
  EncodingAssignment current = CurrentAssignment(stg);
  ASSERT_EQ(current.residual_edges.size(), 1u);
  EXPECT_EQ(current.residual_edges[0],
            (std::pair<std::string, std::string>{"FINAL_ROUND", "WAIT_DATA"}));
  EXPECT_EQ(*HammingDistance(*current.Find("FINAL_ROUND"), *current.Find("WAIT_DATA")), 3);
  EXPECT_EQ(CountResiduals(stg, Codes(current)), 1);
  EXPECT_GT(1, BruteForceEncoding(stg, 3).min_residuals);
}

TEST(ReencodeTest, TwoStatesOneBit) {
  Stg stg = RandomStg(0, 2, 1);
  stg.states.resize(2);
  stg.states[0].name = "A";
  stg.states[1].name = "B";
  stg.transitions.clear();
  Transition t;
  t.from = 0;
  t.to = 1;
  stg.transitions.push_back(t);
  absl::StatusOr<EncodingAssignment> a = ReencodeStates(stg);
  ASSERT_TRUE(a.ok());
  EXPECT_EQ(Codes(*a), (std::vector<uint64_t>{0, 1}));
  EXPECT_TRUE(a->residual_edges.empty());
}

TEST(ReencodeTest, TooManyStates) {
  Stg stg = RandomStg(0, 1, 1);
  stg.states.resize(3, stg.states[0]);
  EXPECT_EQ(ReencodeStates(stg).status().code(), absl::StatusCode::kInvalidArgument);
}

TEST(ReencodeTest, MatchesBruteForceAtDeskScale) {
  std::mt19937_64 rng(9);
  int compared = 0;
  for (uint64_t seed = 0; seed < 150; ++seed) {
    int width = seed % 10 == 0 ? 4 : 3;
    int max_states = width == 4 ? 5 : 6;
    Stg stg = RandomStg(seed, max_states, width);
    for (State& s : stg.states) s.is_protected = rng() % 4 == 0;
    absl::StatusOr<EncodingAssignment> a = ReencodeStates(stg);
    ASSERT_TRUE(a.ok());
    ASSERT_TRUE(a->exact);
    ASSERT_TRUE(Injective(*a));
    BruteForceResult oracle = BruteForceEncoding(stg, width);
    EXPECT_EQ(CountResiduals(stg, Codes(*a)), oracle.min_residuals) << "seed " << seed;
    EXPECT_EQ(Codes(*a), oracle.best) << "seed " << seed;
    EXPECT_EQ(static_cast<int>(a->residual_edges.size()), oracle.min_residuals);
    ++compared;
  }
  EXPECT_EQ(compared, 150);
}

TEST(ReencodeTest, FallbacksStayInjective) {
  for (uint64_t seed = 0; seed < 50; ++seed) {
    Stg stg = RandomStg(seed, 8, 4);
    ReencodeOptions greedy;
    greedy.exact_state_limit = 0;
    absl::StatusOr<EncodingAssignment> g = ReencodeStates(stg, greedy);
    ASSERT_TRUE(g.ok());
    EXPECT_FALSE(g->exact);
    EXPECT_TRUE(Injective(*g));
    ReencodeOptions tiny;
    tiny.node_budget = 10;
    absl::StatusOr<EncodingAssignment> t = ReencodeStates(stg, tiny);
    ASSERT_TRUE(t.ok());
    EXPECT_TRUE(Injective(*t));
    absl::StatusOr<EncodingAssignment> full = ReencodeStates(stg);
    EXPECT_LE(full->residual_edges.size(), g->residual_edges.size());
  }
}

TEST(ReencodeTest, GreedyFindsGrayCycle) {
  ReencodeOptions greedy;
  greedy.exact_state_limit = 0;
  absl::StatusOr<EncodingAssignment> a =
      ReencodeStates(LoadStg("listing7.v", {"WAIT_KEY"}), greedy);
  ASSERT_TRUE(a.ok());
  EXPECT_TRUE(Injective(*a));
  EXPECT_LE(a->residual_edges.size(), 1u);
}

TEST(DeadlockFixTest, Listing4ExitToIdle) {
  absl::StatusOr<FsmAst> out = RemoveStaticDeadlock(Load("listing4.v"), "DEADLOCK_STATE", "IDLE");
  ASSERT_TRUE(out.ok()) << out.status();
  CheckReport report = RunAllChecks(EmitVerilog(*out), {});
  EXPECT_EQ(report.Count(RuleId::kStaticDeadlock), 0u);
  EXPECT_TRUE(report.violations.empty());
}

TEST(DeadlockFixTest, GuardedExit) {
  absl::StatusOr<FsmAst> out =
      RemoveStaticDeadlock(Load("listing4.v"), "DEADLOCK_STATE", "IDLE", "coin");
  ASSERT_TRUE(out.ok()) << out.status();
  Stg stg = *ExtractStg(*out, {});
  int d = *stg.IndexOf("DEADLOCK_STATE");
  std::set<std::string> targets;
  for (const Transition& t : stg.transitions) {
    if (t.from == d) targets.insert(stg.Name(t.to));
  }
  EXPECT_EQ(targets, (std::set<std::string>{"DEADLOCK_STATE", "IDLE"}));
  EXPECT_EQ(RunAllChecks(EmitVerilog(*out), {}).Count(RuleId::kStaticDeadlock), 0u);
}

TEST(DeadlockFixTest, Errors) {
  FsmAst l4 = Load("listing4.v");
  EXPECT_FALSE(RemoveStaticDeadlock(l4, "DEADLOCK_STATE", "DEADLOCK_STATE").ok());
  EXPECT_EQ(RemoveStaticDeadlock(l4, "IDLE", "DISPENSING_ITEM").status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_FALSE(RemoveStaticDeadlock(l4, "DEADLOCK_STATE", "IDLE", "clk").ok());
}

TEST(DeadlockFixTest, TrapMemberExit) {
  absl::StatusOr<InjectionResult> trap = InjectTrapLoop(Load("listing3.v"), 2);
  ASSERT_TRUE(trap.ok());
  const std::string& second = trap->plan.added_states[1];
  absl::StatusOr<FsmAst> out = AddExitTransition(trap->ast, second, "IDLE");
  ASSERT_TRUE(out.ok());
  EXPECT_TRUE(RunAllChecks(EmitVerilog(*out), {}).violations.empty());
}

TEST(UnreachableFixTest, Listing6) {
  FsmAst l6 = Load("listing6.v");
  absl::StatusOr<FsmAst> out = RemoveUnreachableState(l6, "s3");
  ASSERT_TRUE(out.ok()) << out.status();
  EXPECT_EQ(out->FindParameter("s3"), nullptr);
  EXPECT_EQ(out->combinational.ArmFor("s3"), nullptr);
  EXPECT_EQ(out->parameters.size(), l6.parameters.size() - 1);
  SourceText text = EmitVerilog(*out);
  ParseResult reparsed = ParseSource(text);
  ASSERT_TRUE(reparsed.ok());
  EXPECT_TRUE(StructurallyEqual(*reparsed.ast, *out));
  EXPECT_EQ(RunAllChecks(text, {}).Count(RuleId::kUnreachableState), 0u);
}

TEST(UnreachableFixTest, Errors) {
  FsmAst l6 = Load("listing6.v");
  EXPECT_EQ(RemoveUnreachableState(l6, "s0").status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_EQ(RemoveUnreachableState(l6, "s1").status().code(),
            absl::StatusCode::kFailedPrecondition);
  EXPECT_EQ(RemoveUnreachableState(l6, "zz").status().code(),
            absl::StatusCode::kInvalidArgument);
}

TEST(UniquifyTest, SecondColliderTakesLowestFreeCode) {
  FsmAst ast = Load("bases/seq_detector.v");
  ast.FindParameter("s_101")->value = *Encoding::FromBits("010");
  absl::StatusOr<FsmAst> out = UniquifyEncodings(ast);
  ASSERT_TRUE(out.ok());
  EXPECT_EQ(out->FindParameter("s_10")->value.ToBits(), "010");
  EXPECT_EQ(out->FindParameter("s_101")->value.ToBits(), "011");
  EXPECT_EQ(RunAllChecks(EmitVerilog(*out), {}).Count(RuleId::kDuplicateEncoding), 0u);
  EXPECT_FALSE(UniquifyEncodings(Load("bases/seq_detector.v")).ok());
}

TEST(UniquifyTest, Pigeonhole) {
  const std::string text = R"(module p (input clk, input rst, input go);
parameter A = 1'b0;
parameter B = 1'b0;
parameter C = 1'b1;
reg cs, ns;
always @(posedge clk) if (rst) cs <= A; else cs <= ns;
always @(*) begin
  case (cs)
    A: if (go) ns = B; else ns = C;
    B: ns = C;
    C: ns = A;
    default: ns = A;
  endcase
end
endmodule
)";
  EXPECT_EQ(UniquifyEncodings(*ParseSource(SourceText{text, "p"}).ast).status().code(),
            absl::StatusCode::kFailedPrecondition);
}

TEST(MitigateTest, Listing7FullFix) {
  SourceText src{ReadTestData("listing7.v"), "listing7.v"};
  CheckReport report = RunAllChecks(src, {"WAIT_KEY"});
  MitigationOutcome out = Mitigate(src, report);
  EXPECT_TRUE(out.residual.empty());
  EXPECT_TRUE(out.stg_preserved);
  std::set<RuleId> fixed(out.fixed.begin(), out.fixed.end());
  EXPECT_EQ(fixed, (std::set<RuleId>{RuleId::kFifNonzero, RuleId::kHdNotOne,
                                     RuleId::kMissingDefault}));
  CheckReport after = RunAllChecks(out.design, {"WAIT_KEY"});
  EXPECT_TRUE(after.violations.empty());
  ASSERT_TRUE(after.ast.has_value());
  EXPECT_TRUE(after.ast->combinational.HasDefaultArm());
  BruteForceResult oracle = BruteForceEncoding(*report.stg, 3);
  std::vector<uint64_t> codes;
  for (const State& s : after.stg->states) codes.push_back(s.encoding.value());
  EXPECT_EQ(codes, oracle.best);
}

TEST(MitigateTest, CleanDesignIsIdentity) {
  SourceText src{ReadTestData("bases/vending.v"), "vending"};
  MitigationOutcome out = Mitigate(src, RunAllChecks(src, {}));
  EXPECT_EQ(out.design.content, src.content);
  EXPECT_TRUE(out.fixed.empty());
  EXPECT_TRUE(out.residual.empty());
  EXPECT_TRUE(out.steps.empty());
}

TEST(MitigateTest, OnlyDuplicatesOnlyUniquify) {
  InjectOptions options;
  options.source_state = "IDLE";
  options.target_state = "DISPENSING_ITEM";
  absl::StatusOr<InjectionResult> dup =
      InjectDuplicateEncoding(Load("listing3.v"), 0, options);
  ASSERT_TRUE(dup.ok());
  MitigationOutcome out = Mitigate(dup->text, RunAllChecks(dup->text, {}));
  EXPECT_EQ(out.steps, std::vector<std::string>{"applied uniquify encodings"});
  EXPECT_EQ(out.fixed, std::vector<RuleId>{RuleId::kDuplicateEncoding});
  EXPECT_TRUE(out.residual.empty());
}

TEST(MitigateTest, UnparsableInput) {
  SourceText src{ReadTestData("listing1.v"), "l1"};
  MitigationOutcome out = Mitigate(src, RunAllChecks(src, {}));
  EXPECT_EQ(out.design.content, src.content);
  EXPECT_FALSE(out.stg_preserved);
}

TEST(MitigateTest, ClearsEveryInjectedClass) {
  const std::vector<std::string> bases = {"bases/vending.v", "bases/aes_ctrl.v",
                                          "bases/traffic_light.v", "bases/seq_detector.v",
                                          "bases/uart_tx.v"};
  for (const std::string& fixture : bases) {
    FsmAst base = Load(fixture);
    for (VulnClass vuln : AllVulnClasses()) {
      for (uint64_t seed = 0; seed < 20; ++seed) {
        absl::StatusOr<InjectionResult> injected = PlanInjection(vuln, base, seed);
        ASSERT_TRUE(injected.ok());
        CheckReport before = RunAllChecks(injected->text, {});
        MitigationOutcome out = Mitigate(injected->text, before);
        CheckReport after = RunAllChecks(out.design, {});
        EXPECT_TRUE(after.violations.empty())
            << fixture << " " << VulnClassName(vuln) << " seed " << seed << "\n"
            << out.design.content;
        EXPECT_EQ(out.fixed, std::vector<RuleId>{MatchingRule(vuln)});
        for (RuleId rule : out.fixed) EXPECT_EQ(after.Count(rule), 0u);
        EXPECT_EQ(MitigationOutcomeToJson(Mitigate(injected->text, before)),
                  MitigationOutcomeToJson(out));
      }
    }
  }
}

TEST(MitigateTest, NeverIntroducesViolations) {
  for (uint64_t seed = 0; seed < 150; ++seed) {
    SourceText src{::fsmguard::testing::RandomFsmSource(seed), "rnd"};
    CheckReport before = RunAllChecks(src, {"S0"});
    if (!before.parsed) continue;
    MitigationOutcome out = Mitigate(src, before);
    CheckReport after = RunAllChecks(out.design, {"S0"});
    ASSERT_TRUE(after.parsed) << out.design.content;
    std::multiset<std::pair<RuleId, std::vector<std::string>>> in, left;
    for (const RuleViolation& v : before.violations) in.insert(v.Key());
    for (const RuleViolation& v : after.violations) left.insert(v.Key());
    EXPECT_TRUE(std::includes(in.begin(), in.end(), left.begin(), left.end())) << seed;
    for (RuleId rule : out.fixed) EXPECT_EQ(after.Count(rule), 0u);
    if (std::all_of(out.steps.begin(), out.steps.end(), [](const std::string& s) {
          return s.rfind("applied re-encode", 0) == 0 || s.rfind("applied", 0) != 0;
        })) {
      EXPECT_TRUE(out.stg_preserved) << seed;
    }
  }
}

}  // namespace
}  // namespace fsmguard
