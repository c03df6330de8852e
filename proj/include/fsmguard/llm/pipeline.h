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

#ifndef FSMGUARD_LLM_PIPELINE_H_
#define FSMGUARD_LLM_PIPELINE_H_

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fsmguard/llm/capture.h"
#include "fsmguard/llm/generation_params.h"
#include "fsmguard/llm/provider.h"
#include "fsmguard/llm/template.h"
#include "fsmguard/llm/transcript.h"
#include "fsmguard/rtl/source_text.h"

namespace fsmguard {

inline constexpr char kSelfScrutinyQuestion[] =
    "Is there any issue regarding syntax, coding style, and synthesis? If yes, correct the "
    "problems.";

struct PipelineStep {
  std::string name;
  PromptTemplate tmpl;
  std::map<std::string, std::string> literals;
  std::vector<CaptureRule> captures;
  GenerationParams params;
  // Number of verdicts a kPolicyVerdicts response must hold.
  int policy_count = 0;
};

struct PipelineSpec {
  std::string name;
  std::vector<PipelineStep> steps;
  RetryPolicy retry;
  // Responses requested per step before a malformed one fails the run.
  int response_attempts = 3;
  // Appends a review step asking the model to check its own output.
  bool self_scrutiny = false;
  std::string system_prompt;
  // Largest design payload; 0 disables the check.
  size_t design_char_budget = 0;
};

// Step names are unique, captures are well formed, and every capture
// placeholder of step k names a capture of a step before k.
absl::Status ValidatePipeline(const PipelineSpec& spec);

// The steps that run, including the self-scrutiny step when enabled.
std::vector<PipelineStep> ExpandedSteps(const PipelineSpec& spec);

// Copy of `spec` with `params` on every step.
PipelineSpec WithParams(const PipelineSpec& spec, const GenerationParams& params);

// "module", "clock" and "reset" of a design that parses; empty otherwise.
// Step literals of the same name take precedence.
std::map<std::string, std::string> DesignLiterals(const SourceText& design);

struct RunOptions {
  SleepFn sleep = RealSleep();
  // Milliseconds from an arbitrary origin; defaults to a steady clock.
  std::function<int64_t()> now_ms;
  uint64_t jitter_seed = 0;
};

// Runs the steps in order as one conversation. A step whose captures fail is
// asked again up to `response_attempts` times. The transcript records every
// prompt and raw response; on failure it stops at the failing step and holds
// no artifact.
Transcript RunPipeline(const PipelineSpec& spec, const SourceText& design, ChatProvider& provider,
                       const RunOptions& options = {});

// Re-renders the prompt of step `index` from the templates and the captures
// recorded in `transcript`.
absl::StatusOr<std::string> ReplayPrompt(const PipelineSpec& spec, const SourceText& design,
                                         const Transcript& transcript, size_t index);

}  // namespace fsmguard

#endif  // FSMGUARD_LLM_PIPELINE_H_
