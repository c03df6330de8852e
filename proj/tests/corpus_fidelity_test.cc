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
#include <cctype>
#include <map>
#include <regex>
#include <set>
#include <string>
#include <vector>

#include "fsmguard/corpus/corpus.h"
#include "fsmguard/corpus/fidelity.h"
#include "fsmguard/corpus/sanitize.h"
#include "fsmguard/inject/injector.h"
#include "fsmguard/mitigate/mitigation.h"
#include "fsmguard/rtl/emitter.h"
#include "fsmguard/rtl/parser.h"
#include "fsmguard/rules/check_report.h"
#include "fsmguard/stg/extract.h"
#include "fsmguard/stg/stg.h"
#include "gtest/gtest.h"
#include "oracle/oracles.h"

namespace fsmguard {
namespace {

using ::fsmguard::testing::DiffConfinedToSpans;
using ::fsmguard::testing::RandomFsmSource;
using ::fsmguard::testing::ReadTestData;

SourceText Fixture(const std::string& name) { return SourceText{ReadTestData(name), name}; }

FsmAst Load(const std::string& name) {
  ParseResult r = ParseSource(Fixture(name));
  EXPECT_TRUE(r.ok()) << name;
  return *r.ast;
}

std::vector<BaseDesign> AllBases() {
  std::vector<BaseDesign> out;
  for (const char* name : {"vending", "aes_ctrl", "traffic_light", "seq_detector", "uart_tx"}) {
    std::string file = std::string("bases/") + name + ".v";
    out.push_back(BaseDesign{name, Fixture(file), {}});
  }
  return out;
}

std::string Lower(std::string s) {
  std::transform(s.begin(), s.end(), s.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  return s;
}

// Independent keyword scan for the sanitizer postcondition.
bool MentionsAny(const std::string& text, const std::vector<std::string>& words) {
  std::string lower = Lower(text);
  for (const std::string& w : words) {
    if (lower.find(Lower(w)) != std::string::npos) return true;
  }
  return false;
}

RuleConfig NoFif() {
  RuleConfig config;
  config.disabled.insert(RuleId::kFifNonzero);
  return config;
}

// ---- verify_insertion ----

TEST(VerifyInsertionTest, Listing3ToListing4Passes) {
  FidelityVerdict v = VerifyInsertion(Fixture("listing3.v"), Fixture("listing4.v"),
                                      VulnClass::kStaticDeadlock, {});
  EXPECT_TRUE(v.syntax_ok);
  EXPECT_TRUE(v.intended_present);
  EXPECT_TRUE(v.unintended.empty());
  EXPECT_TRUE(v.interface_ok);
  EXPECT_TRUE(v.overall);
}

TEST(VerifyInsertionTest, UnmodifiedInputFails) {
  FidelityVerdict v = VerifyInsertion(Fixture("listing3.v"), Fixture("listing3.v"),
                                      VulnClass::kStaticDeadlock, {});
  EXPECT_TRUE(v.syntax_ok);
  EXPECT_FALSE(v.intended_present);
  EXPECT_FALSE(v.overall);
}

TEST(VerifyInsertionTest, ComposedInjectionReportsUnintendedMissingDefault) {
  FsmAst base = Load("listing3.v");
  absl::StatusOr<InjectionResult> deadlock = PlanInjection(VulnClass::kStaticDeadlock, base, 3);
  ASSERT_TRUE(deadlock.ok()) << deadlock.status();
  absl::StatusOr<InjectionResult> both = RemoveDefaultArm(deadlock->ast);
  ASSERT_TRUE(both.ok()) << both.status();
  // The checker confirms the composed design carries both defects.
  CheckReport oracle = RunAllChecks(both->text, {});
  ASSERT_EQ(oracle.Count(RuleId::kStaticDeadlock), 1u);
  ASSERT_EQ(oracle.Count(RuleId::kMissingDefault), 1u);

  FidelityVerdict v =
      VerifyInsertion(Fixture("listing3.v"), both->text, VulnClass::kStaticDeadlock, {});
  EXPECT_TRUE(v.intended_present);
  ASSERT_EQ(v.unintended.size(), 1u);
  EXPECT_EQ(v.unintended[0].rule, RuleId::kMissingDefault);
  EXPECT_FALSE(v.overall);
}

TEST(VerifyInsertionTest, SyntaxGate) {
  FidelityVerdict v = VerifyInsertion(Fixture("listing3.v"), SourceText{"module broken(", "x"},
                                      VulnClass::kStaticDeadlock, {});
  EXPECT_FALSE(v.syntax_ok);
  EXPECT_FALSE(v.overall);
  EXPECT_FALSE(v.notes.empty());
}

TEST(VerifyInsertionTest, RenamedPortBreaksInterface) {
  std::string text = ReadTestData("listing4.v");
  text = std::regex_replace(text, std::regex("\\bcoin\\b"), "coin_in");
  FidelityVerdict v = VerifyInsertion(Fixture("listing3.v"), SourceText{text, "renamed"},
                                      VulnClass::kStaticDeadlock, {});
  EXPECT_TRUE(v.intended_present);
  EXPECT_FALSE(v.interface_ok);
  EXPECT_FALSE(v.overall);
}

TEST(VerifyInsertionTest, UnparseableOriginalIsReportedNotThrown) {
  FidelityVerdict v = VerifyInsertion(SourceText{"nonsense", "o"}, Fixture("listing4.v"),
                                      VulnClass::kStaticDeadlock, {});
  EXPECT_FALSE(v.overall);
  EXPECT_FALSE(v.notes.empty());
}

// ---- verify_mitigation ----

TEST(VerifyMitigationTest, Listing7ToListing8ClearsMissingDefault) {
  FidelityVerdict v = VerifyMitigation(Fixture("listing7.v"), Fixture("listing8.v"),
                                       {RuleId::kMissingDefault}, {"WAIT_KEY"}, NoFif());
  EXPECT_TRUE(v.syntax_ok);
  EXPECT_TRUE(v.intended_present);
  EXPECT_TRUE(v.unintended.empty());
  EXPECT_TRUE(v.interface_ok);
  ASSERT_TRUE(v.stg_ok.has_value());
  EXPECT_TRUE(*v.stg_ok);
  EXPECT_TRUE(v.overall);
  // The remaining HD violation existed before the re-encoding.
  ASSERT_EQ(v.preexisting.size(), 1u);
  EXPECT_EQ(v.preexisting[0].rule, RuleId::kHdNotOne);
  EXPECT_EQ(v.preexisting[0].locus.states,
            (std::vector<std::string>{"FINAL_ROUND", "WAIT_DATA"}));
}

TEST(VerifyMitigationTest, Listing8IntroducesFifEdgeWhenFifEnabled) {
  // FINAL_ROUND (110) -> WAIT_DATA (001) complements every bit, so with
  // WAIT_KEY = 000 the FIF product is 1 on a transition that was 0 before.
  FidelityVerdict v = VerifyMitigation(Fixture("listing7.v"), Fixture("listing8.v"),
                                       {RuleId::kMissingDefault}, {"WAIT_KEY"});
  ASSERT_EQ(v.unintended.size(), 1u);
  EXPECT_EQ(v.unintended[0].rule, RuleId::kFifNonzero);
  ASSERT_TRUE(v.unintended[0].locus.transition.has_value());
  EXPECT_EQ(v.unintended[0].locus.transition->first, "FINAL_ROUND");
  EXPECT_EQ(v.unintended[0].locus.transition->second, "WAIT_DATA");
  EXPECT_FALSE(v.overall);
}

TEST(VerifyMitigationTest, SyntaxGate) {
  FidelityVerdict v = VerifyMitigation(Fixture("listing7.v"), SourceText{"module", "m"},
                                       {RuleId::kMissingDefault}, {"WAIT_KEY"});
  EXPECT_FALSE(v.syntax_ok);
  EXPECT_FALSE(v.overall);
}

TEST(VerifyMitigationTest, ModuleRenameFailsInterface) {
  std::string text = ReadTestData("listing8.v");
  FsmAst ast = Load("listing8.v");
  text = std::regex_replace(text, std::regex("\\b" + ast.module_name + "\\b"), "renamed_mod");
  FidelityVerdict v = VerifyMitigation(Fixture("listing7.v"), SourceText{text, "m"},
                                       {RuleId::kMissingDefault}, {"WAIT_KEY"}, NoFif());
  EXPECT_TRUE(v.intended_present);
  EXPECT_FALSE(v.interface_ok);
  EXPECT_FALSE(v.overall);
}

TEST(VerifyMitigationTest, UnclearedTargetFails) {
  FidelityVerdict v = VerifyMitigation(Fixture("listing7.v"), Fixture("listing7.v"),
                                       {RuleId::kMissingDefault}, {"WAIT_KEY"}, NoFif());
  EXPECT_FALSE(v.intended_present);
  EXPECT_FALSE(v.overall);
}

TEST(VerifyMitigationTest, VerdictJsonShape) {
  FidelityVerdict v = VerifyMitigation(Fixture("listing7.v"), Fixture("listing8.v"),
                                       {RuleId::kMissingDefault}, {"WAIT_KEY"}, NoFif());
  OrderedJson j = FidelityVerdictToJson(v);
  EXPECT_EQ(j["schema_version"], 1);
  EXPECT_EQ(j["overall"], "pass");
  EXPECT_EQ(j["stg_ok"], true);
  EXPECT_EQ(j["preexisting"].size(), 1u);
}

// ---- generate_corpus ----

TEST(CorpusTest, DeadlocksOverListing3) {
  std::vector<BaseDesign> bases = {BaseDesign{"listing3", Fixture("listing3.v"), {}}};
  CorpusOptions options;
  options.master_seed = 11;
  absl::StatusOr<std::vector<CorpusRecord>> corpus =
      GenerateCorpus(bases, {{VulnClass::kStaticDeadlock, 10}}, options);
  ASSERT_TRUE(corpus.ok()) << corpus.status();
  ASSERT_EQ(corpus->size(), 20u);
  int injected = 0;
  for (size_t i = 0; i < corpus->size(); ++i) {
    const CorpusRecord& r = (*corpus)[i];
    // Default 1:1 interleave: injected records at even positions.
    EXPECT_EQ(r.clean(), i % 2 == 1);
    CheckReport report = RunAllChecks(SourceText{r.source, r.id}, r.protected_names);
    ASSERT_TRUE(report.parsed);
    EXPECT_EQ(report.ViolatedRules(), r.labels);
    if (!r.clean()) {
      ++injected;
      EXPECT_EQ(r.labels, std::vector<RuleId>{RuleId::kStaticDeadlock});
      EXPECT_EQ(report.Count(RuleId::kStaticDeadlock), 1u);
    }
  }
  EXPECT_EQ(injected, 10);
}

TEST(CorpusTest, EmptyMixIsEmptyCorpus) {
  absl::StatusOr<std::vector<CorpusRecord>> corpus = GenerateCorpus(AllBases(), {}, {});
  ASSERT_TRUE(corpus.ok());
  EXPECT_TRUE(corpus->empty());
  corpus = GenerateCorpus({}, {{VulnClass::kStaticDeadlock, 0}}, {});
  ASSERT_TRUE(corpus.ok());
  EXPECT_TRUE(corpus->empty());
}

TEST(CorpusTest, ByteIdenticalAcrossRunsAndWorkers) {
  std::vector<std::pair<VulnClass, int>> mix;
  for (VulnClass c : AllVulnClasses()) mix.push_back({c, 6});
  CorpusOptions serial;
  serial.master_seed = 2024;
  CorpusOptions parallel = serial;
  parallel.workers = 4;
  absl::StatusOr<std::vector<CorpusRecord>> a = GenerateCorpus(AllBases(), mix, serial);
  absl::StatusOr<std::vector<CorpusRecord>> b = GenerateCorpus(AllBases(), mix, serial);
  absl::StatusOr<std::vector<CorpusRecord>> c = GenerateCorpus(AllBases(), mix, parallel);
  ASSERT_TRUE(a.ok() && b.ok() && c.ok());
  EXPECT_EQ(CorpusToJsonl(*a), CorpusToJsonl(*b));
  EXPECT_EQ(CorpusToJsonl(*a), CorpusToJsonl(*c));
  CorpusOptions other = serial;
  other.master_seed = 2025;
  absl::StatusOr<std::vector<CorpusRecord>> d = GenerateCorpus(AllBases(), mix, other);
  ASSERT_TRUE(d.ok());
  EXPECT_NE(CorpusToJsonl(*a), CorpusToJsonl(*d));
}

TEST(CorpusTest, RoundRobinOverBases) {
  CorpusOptions options;
  options.clean_ratio = 0;
  absl::StatusOr<std::vector<CorpusRecord>> corpus =
      GenerateCorpus(AllBases(), {{VulnClass::kUnreachableState, 10}}, options);
  ASSERT_TRUE(corpus.ok()) << corpus.status();
  ASSERT_EQ(corpus->size(), 10u);
  std::vector<BaseDesign> bases = AllBases();
  for (size_t k = 0; k < corpus->size(); ++k) {
    EXPECT_EQ((*corpus)[k].base_id, bases[k % bases.size()].id);
    EXPECT_EQ((*corpus)[k].id, "rec-" + std::string(6 - std::to_string(k).size(), '0') +
                                   std::to_string(k));
  }
}

TEST(CorpusTest, CleanRatio) {
  CorpusOptions options;
  options.clean_ratio = 0.5;
  absl::StatusOr<std::vector<CorpusRecord>> corpus =
      GenerateCorpus(AllBases(), {{VulnClass::kDuplicateEncoding, 6}}, options);
  ASSERT_TRUE(corpus.ok());
  EXPECT_EQ(std::count_if(corpus->begin(), corpus->end(),
                          [](const CorpusRecord& r) { return r.clean(); }),
            3);
  options.clean_ratio = 2;
  corpus = GenerateCorpus(AllBases(), {{VulnClass::kDuplicateEncoding, 3}}, options);
  ASSERT_TRUE(corpus.ok());
  EXPECT_EQ(corpus->size(), 9u);
}

const char kFullyEncoded[] = R"(module full (input clk, input rst, input go);
parameter A = 2'b00;
parameter B = 2'b01;
parameter C = 2'b10;
parameter D = 2'b11;
reg [1:0] cs, ns;
always @(posedge clk) if (rst) cs <= A; else cs <= ns;
always @(*) begin
  case (cs)
    A: if (go) ns = B; else ns = A;
    B: ns = C;
    C: ns = D;
    D: ns = A;
    default: ns = A;
  endcase
end
endmodule
)";

TEST(CorpusTest, UnsatisfiableMixNamesTheClass) {
  std::vector<BaseDesign> bases = {BaseDesign{"full", SourceText{kFullyEncoded, "full"}, {}}};
  absl::StatusOr<std::vector<CorpusRecord>> corpus =
      GenerateCorpus(bases, {{VulnClass::kStaticDeadlock, 2}}, {});
  ASSERT_FALSE(corpus.ok());
  EXPECT_NE(corpus.status().message().find("STATIC_DEADLOCK"), std::string::npos);
  // A satisfiable class on the same base still works.
  corpus = GenerateCorpus(bases, {{VulnClass::kDuplicateEncoding, 2}}, {});
  EXPECT_TRUE(corpus.ok()) << corpus.status();
}

TEST(CorpusTest, RejectsDirtyBaseAndBadOptions) {
  std::vector<BaseDesign> dirty = {BaseDesign{"l4", Fixture("listing4.v"), {}}};
  absl::StatusOr<std::vector<CorpusRecord>> corpus =
      GenerateCorpus(dirty, {{VulnClass::kDuplicateEncoding, 1}}, {});
  ASSERT_FALSE(corpus.ok());
  EXPECT_NE(corpus.status().message().find("not clean"), std::string::npos);
  CorpusOptions bad;
  bad.workers = 0;
  EXPECT_FALSE(GenerateCorpus(AllBases(), {{VulnClass::kDuplicateEncoding, 1}}, bad).ok());
  EXPECT_FALSE(GenerateCorpus(AllBases(), {{VulnClass::kDuplicateEncoding, -1}}, {}).ok());
  EXPECT_FALSE(GenerateCorpus({}, {{VulnClass::kDuplicateEncoding, 1}}, {}).ok());
}

TEST(CorpusTest, JsonlRoundTrip) {
  std::vector<std::pair<VulnClass, int>> mix;
  for (VulnClass c : AllVulnClasses()) mix.push_back({c, 2});
  absl::StatusOr<std::vector<CorpusRecord>> corpus = GenerateCorpus(AllBases(), mix, {});
  ASSERT_TRUE(corpus.ok());
  std::string jsonl = CorpusToJsonl(*corpus);
  EXPECT_EQ(std::count(jsonl.begin(), jsonl.end(), '\n'), static_cast<long>(corpus->size()));
  absl::StatusOr<std::vector<CorpusRecord>> back = ParseCorpusJsonl(jsonl);
  ASSERT_TRUE(back.ok()) << back.status();
  EXPECT_EQ(CorpusToJsonl(*back), jsonl);
  nlohmann::json first = nlohmann::json::parse(jsonl.substr(0, jsonl.find('\n')));
  EXPECT_EQ(first["schema_version"], 1);
  EXPECT_TRUE(first["plan"].is_object());
}

TEST(CorpusTest, JsonlErrors) {
  absl::StatusOr<std::vector<CorpusRecord>> r = ParseCorpusJsonl("{}\n");
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.status().message().find("line 1"), std::string::npos);
  r = ParseCorpusJsonl("\nnot json\n");
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.status().message().find("line 2"), std::string::npos);
  std::string wrong_version =
      R"({"schema_version":9,"id":"a","base_id":"b","vuln":null,"seed":0,"protected":[],)"
      R"("labels":[],"plan":null,"source":""})";
  r = ParseCorpusJsonl(wrong_version);
  ASSERT_FALSE(r.ok());
  EXPECT_NE(r.status().message().find("schema_version"), std::string::npos);
  std::string inconsistent =
      R"({"schema_version":1,"id":"a","base_id":"b","vuln":null,"seed":0,"protected":[],)"
      R"("labels":["STATIC_DEADLOCK"],"plan":null,"source":""})";
  EXPECT_FALSE(ParseCorpusJsonl(inconsistent).ok());
}

// Emission gate and record invariants over every class and base, re-derived
// with the checker and the line-diff oracle.
TEST(CorpusPropertyTest, EveryRecordPassesTheGate) {
  std::vector<std::pair<VulnClass, int>> mix;
  for (VulnClass c : AllVulnClasses()) mix.push_back({c, 10});
  CorpusOptions options;
  options.master_seed = 99;
  options.workers = 4;
  std::vector<BaseDesign> bases = AllBases();
  absl::StatusOr<std::vector<CorpusRecord>> corpus = GenerateCorpus(bases, mix, options);
  ASSERT_TRUE(corpus.ok()) << corpus.status();
  std::map<std::string, std::string> emitted;
  for (const BaseDesign& b : bases) {
    emitted[b.id] = EmitVerilog(*ParseSource(b.source).ast).content;
  }
  for (const CorpusRecord& r : *corpus) {
    EXPECT_EQ(r.vuln.has_value(), r.plan.has_value());
    EXPECT_EQ(r.vuln.has_value(), !r.labels.empty());
    CheckReport report = RunAllChecks(SourceText{r.source, r.id}, r.protected_names);
    EXPECT_EQ(report.ViolatedRules(), r.labels) << r.id;
    if (r.clean()) {
      EXPECT_EQ(r.source, emitted[r.base_id]);
      continue;
    }
    EXPECT_EQ(r.labels, std::vector<RuleId>{MatchingRule(*r.vuln)});
    FidelityVerdict v = VerifyInsertion(SourceText{emitted[r.base_id], r.base_id},
                                        SourceText{r.source, r.id}, *r.vuln, r.protected_names);
    EXPECT_TRUE(v.overall) << r.id;
    EXPECT_TRUE(DiffConfinedToSpans(emitted[r.base_id], r.source, r.plan->modified_spans,
                                    r.plan->removed_spans))
        << r.id;
  }
}

// The deterministic mitigator fixes every duplicate, unreachable and
// deadlock record, and the fix passes verify_mitigation.
TEST(CorpusPropertyTest, MitigationClearsInjectedClasses) {
  std::vector<std::pair<VulnClass, int>> mix = {{VulnClass::kDuplicateEncoding, 25},
                                                {VulnClass::kUnreachableState, 25},
                                                {VulnClass::kStaticDeadlock, 25}};
  CorpusOptions options;
  options.master_seed = 5;
  options.clean_ratio = 0;
  options.workers = 4;
  absl::StatusOr<std::vector<CorpusRecord>> corpus = GenerateCorpus(AllBases(), mix, options);
  ASSERT_TRUE(corpus.ok()) << corpus.status();
  for (const CorpusRecord& r : *corpus) {
    SourceText src{r.source, r.id};
    CheckReport report = RunAllChecks(src, r.protected_names);
    MitigationConfig config;
    config.protected_names = r.protected_names;
    MitigationOutcome outcome = Mitigate(src, report, config);
    FidelityVerdict v = VerifyMitigation(src, outcome.design, r.labels, r.protected_names);
    EXPECT_TRUE(v.overall) << r.id << " " << FidelityVerdictToJson(v).dump();
  }
}

// ---- sanitize_identifiers ----

const std::vector<std::string> kKeywords = {"trojan", "trigger", "malicious", "backdoor"};

TEST(SanitizeTest, TrojanFixture) {
  SourceText source = Fixture("trojan_fsm.v");
  absl::StatusOr<SanitizeResult> r = SanitizeSource(source);
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->ast.module_name, "u0");
  EXPECT_EQ(r->rename.at("trojan_trigger_unit"), "u0");
  EXPECT_NE(r->text.content.find("// logic\n"), std::string::npos);
  EXPECT_FALSE(MentionsAny(r->text.content, kKeywords));
  EXPECT_TRUE(ParseSource(r->text).ok());
  for (const auto& [from, to] : r->rename) EXPECT_TRUE(MentionsAny(from, kKeywords)) << from;
  EXPECT_EQ(r->rename.size(), 4u);

  FsmAst original = Load("trojan_fsm.v");
  absl::StatusOr<Stg> before = ExtractStg(original, {});
  absl::StatusOr<Stg> after = ExtractStg(r->ast, {});
  ASSERT_TRUE(before.ok() && after.ok());
  EXPECT_TRUE(StgIsomorphicUnderRenaming(*before, *after, r->rename));
  EXPECT_FALSE(StgIsomorphicModuloEncoding(*before, *after));
}

TEST(SanitizeTest, NoMatchesIsIdentity) {
  FsmAst ast = Load("listing3.v");
  absl::StatusOr<SanitizeResult> r = SanitizeIdentifiers(ast);
  ASSERT_TRUE(r.ok());
  EXPECT_TRUE(r->rename.empty());
  EXPECT_EQ(r->text.content, EmitVerilog(ast).content);
  EXPECT_TRUE(StructurallyEqual(r->ast, ast));
}

TEST(SanitizeTest, CollisionGetsSuffix) {
  const std::string text = R"(module m (input clk, input rst, input sig0, input trigger, output reg u0);
parameter A = 1'b0;
parameter B = 1'b1;
reg cs, ns;
always @(posedge clk) if (rst) cs <= A; else cs <= ns;
always @(*) begin
  u0 = sig0;
  case (cs)
    A: if (trigger) ns = B; else ns = A;
    default: ns = A;
  endcase
end
endmodule
)";
  absl::StatusOr<SanitizeResult> r = SanitizeSource(SourceText{text, "m"});
  ASSERT_TRUE(r.ok()) << r.status();
  EXPECT_EQ(r->rename.at("trigger"), "sig0_1");
  EXPECT_NE(r->ast.FindPort("sig0"), nullptr);
  EXPECT_NE(r->ast.FindPort("sig0_1"), nullptr);
}

TEST(SanitizeTest, SeedPermutesNumbering) {
  FsmAst ast = Load("trojan_fsm.v");
  SanitizeOptions a;
  std::set<std::map<std::string, std::string>> maps;
  for (uint64_t seed = 0; seed < 8; ++seed) {
    a.seed = seed;
    absl::StatusOr<SanitizeResult> r = SanitizeIdentifiers(ast, a);
    ASSERT_TRUE(r.ok());
    EXPECT_EQ(SanitizeIdentifiers(ast, a)->text.content, r->text.content);
    std::set<std::string> targets;
    for (const auto& [from, to] : r->rename) targets.insert(to);
    EXPECT_EQ(targets, (std::set<std::string>{"u0", "st0", "sig0", "sig1"}));
    maps.insert(r->rename);
  }
  EXPECT_EQ(maps.size(), 2u);
}

TEST(SanitizeTest, CustomKeywordsAndErrors) {
  SanitizeOptions options;
  options.keywords = {"LEAK"};
  absl::StatusOr<SanitizeResult> r = SanitizeSource(Fixture("trojan_fsm.v"), options);
  ASSERT_TRUE(r.ok());
  EXPECT_EQ(r->rename, (std::map<std::string, std::string>{{"LEAK", "st0"}}));
  // The comment word "leaks" is dropped too.
  EXPECT_FALSE(MentionsAny(r->text.content, {"leak"}));
  options.keywords = {};
  EXPECT_FALSE(SanitizeSource(Fixture("trojan_fsm.v"), options).ok());
  options.keywords = {"begin"};
  EXPECT_FALSE(SanitizeSource(Fixture("trojan_fsm.v"), options).ok());
  EXPECT_FALSE(SanitizeSource(SourceText{"module", "bad"}).ok());
}

TEST(SanitizeTest, RenameMapJson) {
  OrderedJson j = RenameMapToJson({{"trojan", "u0"}});
  EXPECT_EQ(j.dump(), R"({"schema_version":1,"rename":{"trojan":"u0"}})");
}

// Random designs with planted keyword identifiers: output is keyword-free,
// parses, and its graph matches the original under the returned map.
TEST(SanitizePropertyTest, RandomDesigns) {
  for (uint64_t seed = 0; seed < 100; ++seed) {
    std::string text = RandomFsmSource(seed);
    text = std::regex_replace(text, std::regex("\\bS([0-9]+)\\b"), "TROJAN_S$1");
    text = std::regex_replace(text, std::regex("\\ba\\b"), "trigger_a");
    text = std::regex_replace(text, std::regex("\\by\\b"), "malicious_y");
    text = std::regex_replace(text, std::regex("\\brnd\\b"), "backdoor_rnd");
    text = std::regex_replace(text, std::regex("// state"), "// trojan state");
    ParseResult parsed = ParseSource(SourceText{text, "rnd"});
    ASSERT_TRUE(parsed.ok()) << text;
    SanitizeOptions options;
    options.seed = seed;
    absl::StatusOr<SanitizeResult> r = SanitizeIdentifiers(*parsed.ast, options);
    ASSERT_TRUE(r.ok()) << r.status() << "\n" << text;
    EXPECT_FALSE(MentionsAny(r->text.content, kKeywords)) << r->text.content;
    ASSERT_TRUE(ParseSource(r->text).ok());
    absl::StatusOr<Stg> before = ExtractStg(*parsed.ast, {});
    absl::StatusOr<Stg> after = ExtractStg(r->ast, {});
    ASSERT_TRUE(before.ok() && after.ok());
    EXPECT_TRUE(StgIsomorphicUnderRenaming(*before, *after, r->rename)) << seed;
    std::set<std::string> targets;
    for (const auto& [from, to] : r->rename) targets.insert(to);
    EXPECT_EQ(targets.size(), r->rename.size());
  }
}

}  // namespace
}  // namespace fsmguard
