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

#include "fsmguard/llm/pipeline.h"

#include <chrono>
#include <set>

#include "absl/strings/str_cat.h"
#include "fsmguard/llm/response_parsers.h"
#include "fsmguard/rtl/parser.h"
#include "fsmguard/util/seeds.h"

namespace fsmguard {
namespace {

constexpr char kScrutinyStep[] = "self_scrutiny";

int64_t SteadyNowMs() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

Bindings BindingsFor(const PipelineStep& step, const SourceText& design,
                     const std::map<std::string, std::string>& design_literals,
                     const std::vector<StepRecord>& done) {
  Bindings b;
  b.design = design.content;
  b.literals = design_literals;
  for (const auto& [k, v] : step.literals) b.literals[k] = v;
  for (const StepRecord& record : done) {
    for (const auto& [k, v] : record.captures) b.captures[absl::StrCat(record.name, ".", k)] = v;
  }
  return b;
}

// Applies the step's capture rules and, for code and verdict steps, checks
// that the artifact parses.
absl::StatusOr<std::map<std::string, std::string>> Capture(const PipelineStep& step,
                                                           const std::string& response,
                                                           bool lenient_code) {
  std::map<std::string, std::string> captures;
  for (const CaptureRule& rule : step.captures) {
    auto value = ApplyCapture(rule, response);
    if (!value.ok()) return value.status();
    captures[rule.name] = *std::move(value);
  }
  if (step.tmpl.expected_output == OutputKind::kCode && !step.tmpl.code_open.empty()) {
    auto code = ParseDelimitedCode(response, step.tmpl.code_open, step.tmpl.code_close);
    if (code.ok()) {
      captures["code"] = *std::move(code);
    } else if (!lenient_code) {
      return code.status();
    }
  }
  if (step.tmpl.expected_output == OutputKind::kPolicyVerdicts) {
    auto verdicts = ParsePolicyVerdicts(response, step.policy_count);
    if (!verdicts.ok()) return verdicts.status();
  }
  return captures;
}

Artifact BuildArtifact(const std::vector<PipelineStep>& steps,
                       const std::vector<StepRecord>& records) {
  Artifact artifact;
  artifact.text = records.back().response;
  // The last step that produces code or verdicts defines the artifact kind;
  // a later review step may supply newer code.
  for (size_t i = 0; i < steps.size(); ++i) {
    const PipelineStep& step = steps[i];
    OutputKind kind = step.tmpl.expected_output;
    if (kind == OutputKind::kCode) {
      artifact.kind = kind;
      auto it = records[i].captures.find("code");
      if (it != records[i].captures.end()) artifact.code = it->second;
    } else if (kind == OutputKind::kPolicyVerdicts) {
      artifact.kind = kind;
      artifact.verdicts = *ParsePolicyVerdicts(records[i].response, step.policy_count);
    } else if (step.name != kScrutinyStep) {
      artifact.kind = kind;
    }
  }
  return artifact;
}

}  // namespace

absl::Status ValidatePipeline(const PipelineSpec& spec) {
  if (spec.steps.empty()) return absl::InvalidArgumentError("pipeline has no steps");
  if (spec.response_attempts < 1) {
    return absl::InvalidArgumentError("response_attempts must be positive");
  }
  std::set<std::string> names;
  std::set<std::string> available;
  for (const PipelineStep& step : ExpandedSteps(spec)) {
    if (step.name.empty() || step.name.find('.') != std::string::npos) {
      return absl::InvalidArgumentError(absl::StrCat("bad step name '", step.name, "'"));
    }
    if (!names.insert(step.name).second) {
      return absl::InvalidArgumentError(absl::StrCat("duplicate step name '", step.name, "'"));
    }
    auto placeholders = ParsePlaceholders(step.tmpl.body);
    if (!placeholders.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("step ", step.name, ": ", placeholders.status().message()));
    }
    for (const Placeholder& p : *placeholders) {
      if (p.kind == Placeholder::Kind::kCapture && !available.count(p.key)) {
        return absl::InvalidArgumentError(absl::StrCat(
            "step ", step.name, ": ", p.Text(), " does not name a capture of an earlier step"));
      }
    }
    if (step.tmpl.expected_output == OutputKind::kPolicyVerdicts && step.policy_count < 1) {
      return absl::InvalidArgumentError(
          absl::StrCat("step ", step.name, ": verdict steps need a policy count"));
    }
    for (const CaptureRule& rule : step.captures) {
      if (auto s = ValidateCaptureRule(rule); !s.ok()) return s;
      available.insert(absl::StrCat(step.name, ".", rule.name));
    }
    if (step.tmpl.expected_output == OutputKind::kCode && !step.tmpl.code_open.empty()) {
      available.insert(absl::StrCat(step.name, ".code"));
    }
  }
  return absl::OkStatus();
}

std::vector<PipelineStep> ExpandedSteps(const PipelineSpec& spec) {
  std::vector<PipelineStep> steps = spec.steps;
  if (!spec.self_scrutiny || steps.empty()) return steps;
  const PipelineStep& last = steps.back();
  PipelineStep review;
  review.name = kScrutinyStep;
  review.params = last.params;
  review.tmpl.name = kScrutinyStep;
  review.tmpl.body = kSelfScrutinyQuestion;
  if (last.tmpl.expected_output == OutputKind::kCode && !last.tmpl.code_open.empty()) {
    review.tmpl.expected_output = OutputKind::kCode;
    review.tmpl.code_open = last.tmpl.code_open;
    review.tmpl.code_close = last.tmpl.code_close;
    absl::StrAppend(&review.tmpl.body, " Write the complete corrected code in the same format: ",
                    last.tmpl.code_open, " <code> ", last.tmpl.code_close);
  }
  steps.push_back(std::move(review));
  return steps;
}

PipelineSpec WithParams(const PipelineSpec& spec, const GenerationParams& params) {
  PipelineSpec out = spec;
  for (PipelineStep& step : out.steps) step.params = params;
  return out;
}

std::map<std::string, std::string> DesignLiterals(const SourceText& design) {
  std::map<std::string, std::string> out;
  ParseResult parsed = ParseSource(design);
  if (!parsed.ok()) return out;
  out["module"] = parsed.ast->module_name;
  out["clock"] = parsed.ast->ClockName();
  out["reset"] = parsed.ast->ResetName();
  return out;
}

Transcript RunPipeline(const PipelineSpec& spec, const SourceText& design, ChatProvider& provider,
                       const RunOptions& options) {
  Transcript t;
  t.pipeline = spec.name;
  t.design_id = design.origin;
  t.provider = provider.id();
  auto fail = [&t](StepRecord record, std::string error) {
    t.failed = true;
    t.failed_step = record.name;
    t.error = error;
    record.error = std::move(error);
    t.steps.push_back(std::move(record));
    return t;
  };
  if (auto s = ValidatePipeline(spec); !s.ok()) {
    t.failed = true;
    t.error = std::string(s.message());
    return t;
  }
  auto now = options.now_ms ? options.now_ms : std::function<int64_t()>(SteadyNowMs);
  std::vector<PipelineStep> steps = ExpandedSteps(spec);
  std::map<std::string, std::string> design_literals = DesignLiterals(design);
  std::vector<ChatMessage> history;
  if (!spec.system_prompt.empty()) history.push_back({"system", spec.system_prompt});

  for (size_t i = 0; i < steps.size(); ++i) {
    const PipelineStep& step = steps[i];
    StepRecord record;
    record.name = step.name;
    record.template_name = step.tmpl.name;
    record.params = step.params;
    int64_t start = now();
    auto prompt = RenderPrompt(step.tmpl, BindingsFor(step, design, design_literals, t.steps),
                               spec.design_char_budget);
    if (!prompt.ok()) return fail(std::move(record), std::string(prompt.status().message()));
    record.prompt = *prompt;
    std::vector<ChatMessage> messages = history;
    messages.push_back({"user", record.prompt});

    bool accepted = false;
    std::string last_error;
    for (int round = 0; round < spec.response_attempts && !accepted; ++round) {
      uint64_t seed = DeriveSeed(options.jitter_seed, i * 1024 + round);
      ChatOutcome outcome =
          ChatComplete(provider, messages, step.params, spec.retry, options.sleep, seed);
      record.attempts += outcome.attempts;
      if (!outcome.response.ok()) {
        record.elapsed_ms = now() - start;
        return fail(std::move(record),
                    absl::StrCat("provider: ", outcome.response.status().ToString()));
      }
      if (round > 0) record.discarded.push_back(record.response);
      record.response = *outcome.response;
      auto captures = Capture(step, record.response, step.name == kScrutinyStep);
      if (captures.ok()) {
        record.captures = *std::move(captures);
        accepted = true;
      } else {
        last_error = std::string(captures.status().message());
      }
    }
    record.elapsed_ms = now() - start;
    if (!accepted) {
      return fail(std::move(record),
                  absl::StrCat("malformed response after ", spec.response_attempts,
                               " attempts: ", last_error));
    }
    history.push_back(messages.back());
    history.push_back({"assistant", record.response});
    t.steps.push_back(std::move(record));
  }
  t.artifact = BuildArtifact(steps, t.steps);
  return t;
}

absl::StatusOr<std::string> ReplayPrompt(const PipelineSpec& spec, const SourceText& design,
                                         const Transcript& transcript, size_t index) {
  std::vector<PipelineStep> steps = ExpandedSteps(spec);
  if (index >= steps.size() || index >= transcript.steps.size()) {
    return absl::OutOfRangeError(absl::StrCat("no step ", index));
  }
  std::vector<StepRecord> before(transcript.steps.begin(), transcript.steps.begin() + index);
  return RenderPrompt(steps[index].tmpl,
                      BindingsFor(steps[index], design, DesignLiterals(design), before),
                      spec.design_char_budget);
}

}  // namespace fsmguard
