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

#ifndef FSMGUARD_LLM_LIBRARY_H_
#define FSMGUARD_LLM_LIBRARY_H_

#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "fsmguard/llm/pipeline.h"
#include "fsmguard/llm/template.h"
#include "fsmguard/rules/check_report.h"

namespace fsmguard {

// Shipped templates:
//   deadlock_insertion    kCode, one-shot example in {{literal:example}}
//   blind_detection       kFreeText, design only
//   contextual_detection  kPolicyVerdicts, policies in {{literal:policies}}
//   fif_transitions       kTable, {{literal:protected_state}}
//   fif_bits              kTable, reads fif_transitions captures
//   fif_metric            kTable, reads fif_bits captures
//   hd_mitigation         kCode, {{literal:protected_state}}, {{literal:assessment}}
std::vector<std::string> TemplateNames();
absl::StatusOr<PromptTemplate> LibraryTemplate(std::string_view name);

// Before/after example bound to {{literal:example}} by default.
std::string DefaultDeadlockExample();

PipelineSpec DeadlockInsertionPipeline();
PipelineSpec BlindDetectionPipeline();
// Policies are numbered from 1 in the rendered prompt.
PipelineSpec ContextualDetectionPipeline(const std::vector<std::string>& policies);
// Three chained steps: transitions, bits, metric.
PipelineSpec FifPipeline(const std::string& protected_state);
PipelineSpec HdMitigationPipeline(const std::string& protected_state, const std::string& assessment);

// Numbered description of the default-handling and Hamming-distance
// violations in `report`, in the form the mitigation template expects.
std::string MitigationAssessment(const CheckReport& report);

// Pipelines by name: deadlock_insertion, blind_detection,
// contextual_detection, fif, hd_mitigation. `literals` are bound on every
// step; contextual_detection reads policies from "policy.1", "policy.2", ...
absl::StatusOr<PipelineSpec> LibraryPipeline(std::string_view name,
                                             const std::map<std::string, std::string>& literals);

// {"name", "self_scrutiny", "response_attempts", "design_char_budget",
//  "steps": [{"name", "template" | "body" + "expected_output" + markers,
//             "literals", "captures", "params", "policy_count"}]}
absl::StatusOr<PipelineSpec> PipelineSpecFromJson(const nlohmann::json& value);

}  // namespace fsmguard

#endif  // FSMGUARD_LLM_LIBRARY_H_
