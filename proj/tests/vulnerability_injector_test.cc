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

#include <set>
#include <string>
#include <vector>

#include "fsmguard/inject/ast_edit.h"
#include "fsmguard/inject/injector.h"
#include "fsmguard/inject/vuln_class.h"
#include "fsmguard/rtl/emitter.h"
#include "fsmguard/rtl/parser.h"
#include "fsmguard/rules/check_report.h"
#include "fsmguard/stg/extract.h"
#include "gtest/gtest.h"
#include "oracle/oracles.h"

namespace fsmguard {
namespace {

using ::fsmguard::testing::DiffConfinedToSpans;
using ::fsmguard::testing::ReadTestData;

FsmAst Load(const std::string& fixture) {
  ParseResult r = ParseSource(SourceText{ReadTestData(fixture), fixture});
  EXPECT_TRUE(r.ok()) << fixture;
  return *r.ast;
}

const std::vector<std::string>& Bases() {
  static const std::vector<std::string> kBases = {
      "bases/vending.v", "bases/aes_ctrl.v", "bases/traffic_light.v", "bases/seq_detector.v",
      "bases/uart_tx.v"};
  return kBases;
}

std::set<RuleId> Rules(const CheckReport& r) {
  std::vector<RuleId> v = r.ViolatedRules();
  return {v.begin(), v.end()};
}

const std::string kSmall = R"(module small (input clk, input rst, input go);
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

TEST(VulnClassTest, NamesRoundTrip) {
  for (VulnClass v : AllVulnClasses()) EXPECT_EQ(ParseVulnClass(VulnClassName(v)), v);
  EXPECT_EQ(ParseVulnClass("static-deadlock"), VulnClass::kStaticDeadlock);
  EXPECT_EQ(ParseVulnClass("cwe835_trap"), VulnClass::kCwe835Trap);
  EXPECT_FALSE(ParseVulnClass("trojan").has_value());
  EXPECT_EQ(AllVulnClasses().size(), 5u);
}

TEST(VulnClassTest, UnknownClassIsError) {
  absl::StatusOr<InjectionResult> r = PlanInjection("bogus", Load("listing3.v"), 1);
  EXPECT_EQ(r.status().code(), absl::StatusCode::kInvalidArgument);
}

TEST(AstEditTest, LowestUnusedAndFreshNames) {
  FsmAst ast = Load("listing7.v");
  std::vector<Encoding> codes = LowestUnusedEncodings(ast, 5);
  ASSERT_EQ(codes.size(), 3u);
  EXPECT_EQ(codes[0].ToBits(), "101");
  EXPECT_EQ(FreshStateName(ast, "WAIT_KEY"), "WAIT_KEY_1");
  EXPECT_EQ(FreshStateName(Load("listing6.v"), "DEADLOCK_STATE"), "deadlock_state");
}

TEST(AstEditTest, OutputDefaultsFollowDefaultArm) {
  StatementList out = OutputDefaultsForNewArm(Load("listing3.v"));
  ASSERT_EQ(out.size(), 1u);
  EXPECT_EQ(out[0].assignment().target, "dispenseItem");
  EXPECT_EQ(out[0].assignment().value.Text(), "0");
  // Leading assignments already cover every output.
  EXPECT_TRUE(OutputDefaultsForNewArm(Load("bases/seq_detector.v")).empty());
}

TEST(StaticDeadlockTest, Listing3IdleMatchesListing4) {
  InjectOptions options;
  options.target_state = "IDLE";
  absl::StatusOr<InjectionResult> r = InjectStaticDeadlock(Load("listing3.v"), 0, options);
  ASSERT_TRUE(r.ok()) << r.status();
  FsmAst expected = Load("listing4.v");
  const FsmAst& got = r->ast;
  ASSERT_EQ(got.parameters.size(), expected.parameters.size());
  for (size_t i = 0; i < got.parameters.size(); ++i) {
    EXPECT_EQ(got.parameters[i].name, expected.parameters[i].name);
    EXPECT_EQ(got.parameters[i].value, expected.parameters[i].value);
  }
  ASSERT_EQ(got.combinational.arms.size(), expected.combinational.arms.size());
  for (size_t i = 0; i < got.combinational.arms.size(); ++i) {
    EXPECT_EQ(got.combinational.arms[i].labels, expected.combinational.arms[i].labels);
    EXPECT_TRUE(StructurallyEqual(got.combinational.arms[i].body,
                                  expected.combinational.arms[i].body))
        << "arm " << i;
  }
  // The sequential block is untouched.
  EXPECT_EQ(got.sequential.events, expected.sequential.events);
  EXPECT_EQ(got.sequential.reset_target, expected.sequential.reset_target);

  EXPECT_EQ(r->plan.target_state, "IDLE");
  EXPECT_EQ(r->plan.added_states, std::vector<std::string>{"DEADLOCK_STATE"});
  CheckReport report = RunAllChecks(r->text, {});
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].rule, RuleId::kStaticDeadlock);
  EXPECT_EQ(report.violations[0].locus.states, std::vector<std::string>{"DEADLOCK_STATE"});
  // The dropped "next_state = ACCEPTING_COINS" line is recorded as removed.
  EXPECT_EQ(r->plan.removed_spans.size(), 1u);
}

TEST(StaticDeadlockTest, RejectsDeadlockedDesign) {
  absl::StatusOr<InjectionResult> r = InjectStaticDeadlock(Load("listing4.v"), 1);
  EXPECT_EQ(r.status().code(), absl::StatusCode::kFailedPrecondition);
}

TEST(StaticDeadlockTest, RejectsIneligibleTarget) {
  InjectOptions options;
  options.target_state = "NOPE";
  EXPECT_FALSE(InjectStaticDeadlock(Load("listing3.v"), 1, options).ok());
}

TEST(StaticDeadlockTest, NoUnusedEncoding) {
  absl::StatusOr<InjectionResult> r =
      InjectStaticDeadlock(ParseSource(SourceText{kSmall, "small"}).ast.value(), 1);
  EXPECT_EQ(r.status().code(), absl::StatusCode::kFailedPrecondition);
}

TEST(DuplicateEncodingTest, Listing7Pair) {
  InjectOptions options;
  options.source_state = "WAIT_DATA";
  options.target_state = "DO_ROUND";
  absl::StatusOr<InjectionResult> r = InjectDuplicateEncoding(Load("listing7.v"), 3, options);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->ast.FindParameter("DO_ROUND")->value.ToLiteral(), "3'b001");
  EXPECT_EQ(r->plan.target_state, "DO_ROUND");
  CheckReport report = RunAllChecks(r->text, {});
  EXPECT_EQ(report.Count(RuleId::kDuplicateEncoding), 1u);
}

TEST(DuplicateEncodingTest, SingleStateIsError) {
  const std::string one = R"(module one (input clk, input rst);
parameter A = 1'b0;
reg cs, ns;
always @(posedge clk) if (rst) cs <= A; else cs <= ns;
always @(*) begin
  case (cs)
    A: ns = A;
    default: ns = A;
  endcase
end
endmodule
)";
  ParseResult p = ParseSource(SourceText{one, "one"});
  ASSERT_TRUE(p.ok());
  EXPECT_FALSE(InjectDuplicateEncoding(*p.ast, 1).ok());
}

TEST(UnreachableStateTest, Listing7ExitsToWaitKey) {
  InjectOptions options;
  options.target_state = "WAIT_KEY";
  FsmAst base = Load("listing7.v");
  absl::StatusOr<InjectionResult> r = InjectUnreachableState(base, 5, options);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->ast.parameters.size(), 6u);
  const std::string& added = r->plan.added_states.at(0);
  const CaseArm* arm = r->ast.combinational.ArmFor(added);
  ASSERT_NE(arm, nullptr);
  EXPECT_TRUE(arm->body.back().assignment().value.IsIdentifier("WAIT_KEY"));
  CheckReport before = RunAllChecks(EmitVerilog(base), {});
  CheckReport after = RunAllChecks(r->text, {});
  std::set<RuleId> fresh = Rules(after);
  for (RuleId rule : before.ViolatedRules()) fresh.erase(rule);
  EXPECT_EQ(fresh, std::set<RuleId>{RuleId::kUnreachableState});
  EXPECT_EQ(after.Count(RuleId::kUnreachableState), 1u);
}

TEST(UnreachableStateTest, FullEncodingSpaceIsError) {
  EXPECT_FALSE(InjectUnreachableState(ParseSource(SourceText{kSmall, "s"}).ast.value(), 1).ok());
}

TEST(RemoveDefaultTest, Listing8BecomesListing7Case) {
  absl::StatusOr<InjectionResult> r = RemoveDefaultArm(Load("listing8.v"));
  ASSERT_TRUE(r.ok()) << r.status();
  FsmAst l7 = Load("listing7.v");
  ASSERT_EQ(r->ast.combinational.arms.size(), l7.combinational.arms.size());
  for (size_t i = 0; i < l7.combinational.arms.size(); ++i) {
    EXPECT_EQ(r->ast.combinational.arms[i].labels, l7.combinational.arms[i].labels);
    EXPECT_TRUE(
        StructurallyEqual(r->ast.combinational.arms[i].body, l7.combinational.arms[i].body));
  }
  EXPECT_EQ(RunAllChecks(r->text, {}).Count(RuleId::kMissingDefault), 1u);
  EXPECT_EQ(r->plan.notes, "unhandled encodings: 100, 101, 111");
  EXPECT_FALSE(RemoveDefaultArm(r->ast).ok());
}

TEST(RemoveDefaultTest, FullyCoveredIsError) {
  const std::string covered = R"(module c (input clk, input rst, input go);
parameter A = 1'b0;
parameter B = 1'b1;
reg cs, ns;
always @(posedge clk) if (rst) cs <= A; else cs <= ns;
always @(*) begin
  case (cs)
    A: if (go) ns = B; else ns = A;
    B: ns = A;
    default: ns = A;
  endcase
end
endmodule
)";
  absl::StatusOr<InjectionResult> r =
      RemoveDefaultArm(ParseSource(SourceText{covered, "c"}).ast.value());
  EXPECT_EQ(r.status().code(), absl::StatusCode::kFailedPrecondition);
}

TEST(TrapLoopTest, Listing3) {
  absl::StatusOr<InjectionResult> r = InjectTrapLoop(Load("listing3.v"), 11);
  ASSERT_TRUE(r.ok()) << r.status();
  ASSERT_EQ(r->plan.added_states.size(), 2u);
  CheckReport report = RunAllChecks(r->text, {});
  ASSERT_EQ(report.violations.size(), 1u);
  EXPECT_EQ(report.violations[0].rule, RuleId::kTrapLoop);
  std::vector<std::string> members = report.violations[0].locus.states;
  std::sort(members.begin(), members.end());
  EXPECT_EQ(members, r->plan.added_states);
  const auto& entered = std::get<TrapEvidence>(report.violations[0].evidence).entered_from;
  EXPECT_EQ(entered, std::vector<std::string>{r->plan.target_state});
}

TEST(TrapLoopTest, NeedsTwoCodes) {
  const std::string tight = R"(module t (input clk, input rst, input go);
parameter A = 2'b00;
parameter B = 2'b01;
parameter C = 2'b10;
reg [1:0] cs, ns;
always @(posedge clk) if (rst) cs <= A; else cs <= ns;
always @(*) begin
  case (cs)
    A: if (go) ns = B; else ns = A;
    B: ns = C;
    C: ns = A;
    default: ns = A;
  endcase
end
endmodule
)";
  FsmAst ast = ParseSource(SourceText{tight, "t"}).ast.value();
  EXPECT_EQ(InjectTrapLoop(ast, 1).status().code(), absl::StatusCode::kFailedPrecondition);
  // The other classes fit in the single free code.
  int ok = 0;
  for (VulnClass v : AllVulnClasses()) ok += PlanInjection(v, ast, 2).ok();
  EXPECT_EQ(ok, 4);
}

TEST(DispatchTest, SameAsDirectCall) {
  FsmAst ast = Load("listing3.v");
  for (uint64_t seed : {1u, 2u, 3u}) {
    EXPECT_EQ(PlanInjection(VulnClass::kStaticDeadlock, ast, seed)->text.content,
              InjectStaticDeadlock(ast, seed)->text.content);
  }
}

TEST(DispatchTest, AllClassesOnListing3) {
  int ok = 0;
  for (VulnClass v : AllVulnClasses()) ok += PlanInjection(v, Load("listing3.v"), 4).ok();
  EXPECT_EQ(ok, 5);
}

TEST(InjectorPropertyTest, RoundTripMinimalDeterministic) {
  for (const std::string& fixture : Bases()) {
    FsmAst base = Load(fixture);
    std::string base_text = EmitVerilog(base).content;
    for (VulnClass vuln : AllVulnClasses()) {
      std::set<std::string> distinct;
      for (uint64_t seed = 0; seed < 50; ++seed) {
        absl::StatusOr<InjectionResult> r = PlanInjection(vuln, base, seed);
        ASSERT_TRUE(r.ok()) << fixture << " " << VulnClassName(vuln) << " " << r.status();
        CheckReport report = RunAllChecks(r->text, {});
        ASSERT_TRUE(report.parsed);
        EXPECT_EQ(Rules(report), std::set<RuleId>{MatchingRule(vuln)})
            << fixture << " " << VulnClassName(vuln) << " seed " << seed;
        // Interface preservation.
        EXPECT_EQ(r->ast.module_name, base.module_name);
        ASSERT_EQ(r->ast.ports.size(), base.ports.size());
        for (size_t i = 0; i < base.ports.size(); ++i) {
          EXPECT_EQ(r->ast.ports[i].name, base.ports[i].name);
          EXPECT_EQ(r->ast.ports[i].direction, base.ports[i].direction);
        }
        EXPECT_EQ(r->ast.ClockName(), base.ClockName());
        EXPECT_EQ(r->ast.ResetName(), base.ResetName());
        // Every named state exists after the edit.
        for (const std::string& s : r->plan.added_states) {
          EXPECT_NE(r->ast.FindParameter(s), nullptr);
        }
        if (!r->plan.target_state.empty()) {
          EXPECT_NE(r->ast.FindParameter(r->plan.target_state), nullptr);
        }
        EXPECT_TRUE(DiffConfinedToSpans(base_text, r->text.content, r->plan.modified_spans,
                                        r->plan.removed_spans))
            << fixture << " " << VulnClassName(vuln) << " seed " << seed << "\n"
            << r->text.content;
        EXPECT_EQ(PlanInjection(vuln, base, seed)->text.content, r->text.content);
        distinct.insert(r->text.content);
      }
      if (vuln != VulnClass::kMissingDefault) {
        EXPECT_GT(distinct.size(), 1u) << fixture << " " << VulnClassName(vuln);
      }
    }
  }
}

TEST(DiffOracleTest, DetectsChangesOutsideSpans) {
  std::string base = "a\nb\nc\nd\n";
  EXPECT_TRUE(DiffConfinedToSpans(base, "a\nX\nc\nd\n", {Span{2, 2}}, {}));
  EXPECT_FALSE(DiffConfinedToSpans(base, "a\nX\nc\nY\n", {Span{2, 2}}, {}));
  EXPECT_FALSE(DiffConfinedToSpans(base, "a\nb\nc\nd\n", {Span{2, 2}}, {}));
  EXPECT_TRUE(DiffConfinedToSpans(base, "a\nb\nd\n", {}, {Span{3, 3}}));
  EXPECT_TRUE(DiffConfinedToSpans(base, "a\nb\nN\nM\nc\nd\n", {Span{3, 4}}, {}));
}

}  // namespace
}  // namespace fsmguard
