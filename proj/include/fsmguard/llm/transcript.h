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

#ifndef FSMGUARD_LLM_TRANSCRIPT_H_
#define FSMGUARD_LLM_TRANSCRIPT_H_

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "fsmguard/llm/generation_params.h"
#include "fsmguard/llm/response_parsers.h"
#include "fsmguard/llm/template.h"
#include "fsmguard/report/json_codec.h"

namespace fsmguard {

struct StepRecord {
  std::string name;
  std::string template_name;
  std::string prompt;
  // The accepted response, or the last one received when the step failed.
  std::string response;
  // Earlier responses of this step that failed a capture, verbatim.
  std::vector<std::string> discarded;
  std::map<std::string, std::string> captures;
  // Provider calls made for this step, retries included.
  int attempts = 0;
  int64_t elapsed_ms = 0;
  GenerationParams params;
  std::string error;
};

struct Artifact {
  OutputKind kind = OutputKind::kFreeText;
  std::optional<std::string> code;
  std::optional<std::vector<PolicyVerdict>> verdicts;
  // The last response, for table and free-text pipelines.
  std::string text;
};

struct Transcript {
  static constexpr int kSchemaVersion = 1;

  std::string pipeline;
  std::string design_id;
  std::string provider;
  // Steps in execution order; a failed run ends with the failing step.
  std::vector<StepRecord> steps;
  bool failed = false;
  std::string failed_step;
  std::string error;
  std::optional<Artifact> artifact;

  const StepRecord* FindStep(const std::string& name) const;
};

OrderedJson TranscriptToJsonValue(const Transcript& transcript);
std::string TranscriptToJson(const Transcript& transcript);
absl::StatusOr<Transcript> TranscriptFromJson(const nlohmann::json& value);

}  // namespace fsmguard

#endif  // FSMGUARD_LLM_TRANSCRIPT_H_
