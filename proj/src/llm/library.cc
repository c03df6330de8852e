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

#include "fsmguard/llm/library.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"

namespace fsmguard {
namespace {

constexpr char kDeadlockInsertion[] = R"(Your task is to perform the following actions:
Now, read the following Verilog code delimited by <>
Code: {{design}}
Modify the code by introducing/adding a static deadlock state to the existing state transitions in the case statement.
Static deadlock refers to a situation when the FSM enters to that state from another state, it will not be able to come out from that state.
To do this,
Step 1: From the parameter list, first select a state from the state transition graph.
Step 2: Change its state transition in the combinational block so that it connects to a new state called `deadlock_state`.
Step 3: Add new `deadlock_state` state in the case statement that has a self-connecting loop.

For example,
{{literal:example}}

Now implement the deadlock in the provided code. Always implement deadlock state in the case statement. Do not modify the sequential block.

Take care of the following steps:
1) Do not use semicolon(;) after "end" keyword
2) For multiple statements, always use begin..end
3) Use parameter instead of local parameter
4) Put semicolon after the declaration of reg
5) Put semicolon at the end of each statement
6) Mark clock signal as "{{literal:clock}}" and reset signal as "{{literal:reset}}"
7) Make the module name "{{literal:module}}"

When giving a response, only write in the following format delimited by [].

Make sure that all three steps are followed.

Explanation: Where and how have Step 1, Step 2, and Step 3 been followed in the code? Tell me the line number also where step 1, 2, and 3 has been implemented.

Review 1: Have you implemented Step 2 in the case statement block? If not, rewrite the whole code by case statement block as shown in the provided code.

Review 2: Is there any issue regarding syntax, coding style, and synthesis? If so, correct the problems.

[code: < modified code >])";

constexpr char kDeadlockExample[] = R"(Before deadlock:
parameter X=3'b000, Y=3'b001, Z=3'b011;
case(current_state)
    X: begin
        next_state=Y;
    end
    Y: begin
        next_state=Z;
    end
    Z: begin
        next_state=X;
    end
endcase

After deadlock:
case(current_state)
    X: begin
        if (start)
            next_state=Y;
        else
            next_state=deadlock_state;
    end
    Y: begin
        next_state=Z;
    end
    Z: begin
        next_state=X;
    end
    deadlock_state: begin
        next_state=deadlock_state;
    end
endcase

Here, when X transits to `deadlock_state`, FSM cannot get out of it.)";

constexpr char kBlindDetection[] = R"({{design}}

Does this module have any security issues? Describe where and why?)";

constexpr char kContextualDetection[] = R"({{design}}

{{literal:policies}}

Check if any of these policies are violated in the module. If violated, why and where? Give a response in the following pattern:

Policy #: violated or not, explanation: if violated, why and where? , line no: violated line)";

constexpr char kFifTransitions[] = R"(Your task is to perform the following actions:
First, read the following Verilog code delimited by <>
Code: {{design}}
Next, consider the '{{literal:protected_state}}' state as a protected state and the rest of the states are unprotected
Next, Analysis the state transitions that occurred in the design between unprotected states and list all the state transitions. consider the if, else if, and else conditions.
Then, remove the state transitions where the protected state is present

While giving a response, only write down the modified state transition list (after removing the protected state) in the following format:
Modified state transition list:
state transition 1: state_name (encoding) -> state_name(encoding)
protected_state: protected state (encoding state))";

constexpr char kFifDefinition[] = R"(1. Let's first know about the definition of the FIF metric.

FIF = Product from i=0 to n-1 of [(bx_i XOR by_i) OR (bx_i AND bp_i)]

where:
- bx_i represents bit of present state at position i.
- by_i represents the bit of next state at position i.
- bp_i represents bit of protected state at position i.
- n is the width of the state register (total number of bits).
- XOR is the bitwise exclusive OR operation.
- OR is the bitwise OR operation.
- AND is the bitwise AND operation.)";

constexpr char kFifBitsTail[] = R"(

2. In this task, we want to identify the bits of bx, by, and bp

For example:

state transition 1: A (11001) -> B (01011), protected state (01100)

bx = 11001, by = 01011, bp = 01100

| i    | 0 (MSB) | 1 | 2 | 3 | 4 |
| bx_i | 1       | 1 | 0 | 0 | 1 |
| by_i | 0       | 1 | 0 | 1 | 1 |
| bp_i | 0       | 1 | 1 | 0 | 0 |

3. Now read the following text delimited by <>

State transitions: <{{capture:transitions.list}}>

For each of the state transitions, identify bx_i, by_i, and bp_i for all values of i. Put the information in tabular format.

Review the TABLE again. ensure that bx, by, and bp are listed in the same order.

While giving the response, only write it down in the following format:

state transition 1: state1_name (encoding= bx) -> state2_name(encoding= by), protected_state (bp)

bx = , by = , bp = , n =

| i    | 0 (MSB) | 1 | 2 | ... | n-1 (LSB) |
| bx_i |         |   |   |     |           |
| by_i |         |   |   |     |           |
| bp_i |         |   |   |     |           |)";

constexpr char kFifMetricTail[] = R"(

2. Steps to calculate the FIF metric:

Step 1: Start from i=0 and calculate
FIF_i = ((bx_i XOR by_i) OR (bx_i AND bp_i))
Step 2: Repeat the process for other values of i upto n-1
Step 3: Calculate overall FIF metric which is the product of all FIF_i values.

For example: If bx (present state) = 010, by (next state) = 011, bp (protected state) = 000

Step 1: For i=0, bx_i = 0, by_i = 0, bp_i = 0
FIF_0 = (0 XOR 0) OR (0 AND 0) = 0 OR 0 = 0
Step 2: For i=1, bx_i = 1, by_i = 1, bp_i = 0
FIF_1 = (1 XOR 1) OR (1 AND 0) = 0 OR 0 = 0
For i=2, bx_i = 0, by_i = 1, bp_i = 0
FIF_2 = (0 XOR 1) OR (0 AND 0) = 1 OR 0 = 1
Step 3: Overall FIF = FIF_0 x FIF_1 x FIF_2 = 0 x 0 x 1 = 0

3. Now read the following text delimited by <>
Input information : <{{capture:bits.table}}>

For each state transitions, follow step 1 to step 3 to calculate FIF.

While giving a response, only write down in the following format:

FIF_i = ((bx_i XOR by_i) OR (bx_i AND bp_i))

State transition 1: state1 (encoding) -> state2 (encoding), protected (encoding)

| i                 | 0 | 1 | 2 | 3 |
| bx_i              |   |   |   |   |
| by_i              |   |   |   |   |
| bp_i              |   |   |   |   |
| bx_i XOR by_i     |   |   |   |   |
| bx_i AND bp_i     |   |   |   |   |
| Calculated FIF_i  |   |   |   |   |

Overall FIF = FIF_0 x FIF_1 x ... x FIF_(n-1) = <value>)";

constexpr char kHdMitigation[] = R"({{design}}

In this case, assume {{literal:protected_state}} is the protected state and other states are unprotected.

There are two security rules:

1. All unused states of a control FSM should be handled through the 'default' statement in the RTL description
2. When state transition takes place between two consecutive unprotected states, the hamming distance between the states should be 1.

Security Assessment:

{{literal:assessment}}

Violation Mitigation Instructions:

Modify the FSM design so that the rules are followed. While modification the STG graph remains the same. For the modified design, check if there is any rule violation in the provided design. If yes, continue modifying until two rules are followed in the modified design

When giving a response, write the complete modified design in the following format delimited by [].

[code: < modified code >])";

PromptTemplate Make(std::string name, std::string body, OutputKind kind, bool delimited_design) {
  PromptTemplate t;
  t.name = std::move(name);
  t.body = std::move(body);
  t.expected_output = kind;
  if (!delimited_design) {
    t.design_open.clear();
    t.design_close.clear();
  }
  if (kind == OutputKind::kCode) {
    t.code_open = "[code:";
    t.code_close = "]";
  }
  return t;
}

PipelineStep Step(std::string name, std::string_view tmpl) {
  PipelineStep step;
  step.name = std::move(name);
  step.tmpl = *LibraryTemplate(tmpl);
  return step;
}

}  // namespace

std::vector<std::string> TemplateNames() {
  return {"deadlock_insertion", "blind_detection", "contextual_detection", "fif_transitions",
          "fif_bits",           "fif_metric",      "hd_mitigation"};
}

absl::StatusOr<PromptTemplate> LibraryTemplate(std::string_view name) {
  if (name == "deadlock_insertion") {
    return Make("deadlock_insertion", kDeadlockInsertion, OutputKind::kCode, true);
  }
  if (name == "blind_detection") {
    return Make("blind_detection", kBlindDetection, OutputKind::kFreeText, false);
  }
  if (name == "contextual_detection") {
    return Make("contextual_detection", kContextualDetection, OutputKind::kPolicyVerdicts, false);
  }
  if (name == "fif_transitions") {
    return Make("fif_transitions", kFifTransitions, OutputKind::kTable, true);
  }
  if (name == "fif_bits") {
    return Make("fif_bits",
                absl::StrCat("Your task is to perform the following actions:\n\n", kFifDefinition,
                             kFifBitsTail),
                OutputKind::kTable, true);
  }
  if (name == "fif_metric") {
    return Make("fif_metric",
                absl::StrCat("Your task is to perform the following actions:\n\n", kFifDefinition,
                             kFifMetricTail),
                OutputKind::kTable, true);
  }
  if (name == "hd_mitigation") {
    return Make("hd_mitigation", kHdMitigation, OutputKind::kCode, true);
  }
  return absl::NotFoundError(absl::StrCat("no template named '", std::string(name), "'"));
}

std::string DefaultDeadlockExample() { return kDeadlockExample; }

PipelineSpec DeadlockInsertionPipeline() {
  PipelineSpec spec;
  spec.name = "deadlock_insertion";
  PipelineStep step = Step("insert", "deadlock_insertion");
  step.literals["example"] = DefaultDeadlockExample();
  spec.steps.push_back(std::move(step));
  return spec;
}

PipelineSpec BlindDetectionPipeline() {
  PipelineSpec spec;
  spec.name = "blind_detection";
  spec.steps.push_back(Step("assess", "blind_detection"));
  return spec;
}

PipelineSpec ContextualDetectionPipeline(const std::vector<std::string>& policies) {
  PipelineSpec spec;
  spec.name = "contextual_detection";
  PipelineStep step = Step("assess", "contextual_detection");
  std::vector<std::string> lines;
  for (size_t i = 0; i < policies.size(); ++i) {
    lines.push_back(absl::StrCat("Policy ", i + 1, ". ", policies[i]));
  }
  step.literals["policies"] = absl::StrJoin(lines, "\n\n");
  step.policy_count = static_cast<int>(policies.size());
  spec.steps.push_back(std::move(step));
  return spec;
}

PipelineSpec FifPipeline(const std::string& protected_state) {
  PipelineSpec spec;
  spec.name = "fif";
  PipelineStep transitions = Step("transitions", "fif_transitions");
  transitions.literals["protected_state"] = protected_state;
  transitions.captures.push_back(CaptureRule::Pattern(
      "list", R"(\s*[-*]?\s*((?:state transition\s+\d+|protected_state)\s*:.*\S))", true));
  PipelineStep bits = Step("bits", "fif_bits");
  bits.captures.push_back(CaptureRule::Pattern(
      "table", R"(\s*((?:state transition\s+\d+\s*:|bx\s*=|\|?\s*(?:i|bx_i|by_i|bp_i)\s*[|\t ]).*\S))",
      true));
  PipelineStep metric = Step("metric", "fif_metric");
  metric.captures.push_back(
      CaptureRule::Pattern("transitions", R"(\s*(state transition\s+\d+\s*:.*\S))", true));
  metric.captures.push_back(CaptureRule::Pattern(
      "overall", R"(\s*(?:overall fif\b.*|=.*)=\s*([01])\s*$)", true));
  spec.steps = {std::move(transitions), std::move(bits), std::move(metric)};
  return spec;
}

PipelineSpec HdMitigationPipeline(const std::string& protected_state,
                                  const std::string& assessment) {
  PipelineSpec spec;
  spec.name = "hd_mitigation";
  PipelineStep step = Step("mitigate", "hd_mitigation");
  step.literals["protected_state"] = protected_state;
  step.literals["assessment"] = assessment;
  spec.steps.push_back(std::move(step));
  return spec;
}

std::string MitigationAssessment(const CheckReport& report) {
  std::vector<std::string> items;
  for (const RuleViolation& v : report.violations) {
    if (v.rule != RuleId::kMissingDefault) continue;
    const auto& e = std::get<MissingDefaultEvidence>(v.evidence);
    std::vector<std::string> codes;
    for (const Encoding& code : e.unused) codes.push_back(absl::StrCat("'", code.ToBits(), "'"));
    if (codes.size() > 1) codes.back() = absl::StrCat("and ", codes.back());
    items.push_back(absl::StrCat(
        "There is no 'default' statement through which unused states ",
        absl::StrJoin(codes, codes.size() > 2 ? ", " : " "), " are handled."));
  }
  std::vector<std::string> hd_lines;
  for (const RuleViolation& v : report.violations) {
    if (v.rule != RuleId::kHdNotOne || v.locus.states.size() < 2 || !report.stg.has_value()) {
      continue;
    }
    const Stg& stg = *report.stg;
    auto from = stg.IndexOf(v.locus.states[0]);
    auto to = stg.IndexOf(v.locus.states[1]);
    if (!from.has_value() || !to.has_value()) continue;
    hd_lines.push_back(absl::StrCat(v.locus.states[0], " - ", v.locus.states[1], " : ",
                                    stg.states[*from].encoding.ToBits(), " - ",
                                    stg.states[*to].encoding.ToBits(),
                                    " : HD=", std::get<HdEvidence>(v.evidence).distance));
  }
  if (!hd_lines.empty()) {
    items.push_back(absl::StrCat(
        "There are following ", hd_lines.size(),
        " state transitions between unprotected states where the hamming distance is not 1.\n\n",
        absl::StrJoin(hd_lines, "\n\n")));
  }
  if (items.empty()) return "No violations of these two rules were found in this design.";
  std::string out = "These rules are violated in this design in the following way:\n";
  for (size_t i = 0; i < items.size(); ++i) absl::StrAppend(&out, "\n", i + 1, ". ", items[i]);
  return out;
}

absl::StatusOr<PipelineSpec> LibraryPipeline(std::string_view name,
                                             const std::map<std::string, std::string>& literals) {
  PipelineSpec spec;
  if (name == "deadlock_insertion") {
    spec = DeadlockInsertionPipeline();
  } else if (name == "blind_detection") {
    spec = BlindDetectionPipeline();
  } else if (name == "contextual_detection") {
    std::vector<std::string> policies;
    for (int i = 1;; ++i) {
      auto it = literals.find(absl::StrCat("policy.", i));
      if (it == literals.end()) break;
      policies.push_back(it->second);
    }
    if (policies.empty()) {
      return absl::InvalidArgumentError("contextual_detection needs literals policy.1, policy.2, ...");
    }
    spec = ContextualDetectionPipeline(policies);
  } else if (name == "fif") {
    spec = FifPipeline("");
    spec.steps[0].literals.erase("protected_state");
  } else if (name == "hd_mitigation") {
    spec = HdMitigationPipeline("", "");
    spec.steps[0].literals.clear();
  } else {
    return absl::NotFoundError(absl::StrCat("no pipeline named '", std::string(name), "'"));
  }
  for (PipelineStep& step : spec.steps) {
    for (const auto& [k, v] : literals) {
      if (k.rfind("policy.", 0) != 0) step.literals[k] = v;
    }
  }
  return spec;
}

absl::StatusOr<PipelineSpec> PipelineSpecFromJson(const nlohmann::json& value) {
  if (!value.is_object()) return absl::InvalidArgumentError("pipeline must be an object");
  PipelineSpec spec;
  try {
    spec.name = value.value("name", "pipeline");
    spec.self_scrutiny = value.value("self_scrutiny", false);
    spec.response_attempts = value.value("response_attempts", spec.response_attempts);
    spec.design_char_budget = value.value("design_char_budget", spec.design_char_budget);
    spec.system_prompt = value.value("system_prompt", "");
    for (const auto& s : value.at("steps")) {
      PipelineStep step;
      step.name = s.at("name");
      if (s.contains("template")) {
        auto tmpl = LibraryTemplate(s["template"].get<std::string>());
        if (!tmpl.ok()) return tmpl.status();
        step.tmpl = *tmpl;
      } else {
        step.tmpl.name = step.name;
        step.tmpl.body = s.at("body");
        auto kind = ParseOutputKind(s.value("expected_output", "free_text"));
        if (!kind.has_value()) return absl::InvalidArgumentError("unknown expected_output");
        step.tmpl.expected_output = *kind;
        step.tmpl.design_open = s.value("design_open", "<");
        step.tmpl.design_close = s.value("design_close", ">");
        step.tmpl.code_open = s.value("code_open", "");
        step.tmpl.code_close = s.value("code_close", "");
      }
      step.literals = s.value("literals", std::map<std::string, std::string>{});
      step.policy_count = s.value("policy_count", 0);
      if (s.contains("params")) {
        auto params = GenerationParamsFromJson(s["params"]);
        if (!params.ok()) return params.status();
        step.params = *params;
      }
      for (const auto& c : s.value("captures", nlohmann::json::array())) {
        auto rule = CaptureRuleFromJson(c);
        if (!rule.ok()) return rule.status();
        step.captures.push_back(*std::move(rule));
      }
      spec.steps.push_back(std::move(step));
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("pipeline: ", e.what()));
  }
  if (auto s = ValidatePipeline(spec); !s.ok()) return s;
  return spec;
}

}  // namespace fsmguard
