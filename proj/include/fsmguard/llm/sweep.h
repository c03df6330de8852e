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

#ifndef FSMGUARD_LLM_SWEEP_H_
#define FSMGUARD_LLM_SWEEP_H_

#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "fsmguard/llm/generation_params.h"
#include "fsmguard/llm/pipeline.h"
#include "fsmguard/llm/provider.h"
#include "fsmguard/llm/transcript.h"
#include "fsmguard/rtl/source_text.h"

namespace fsmguard {

struct SweepCell {
  std::string design_id;
  int point = 0;
  GenerationParams params;
  Transcript transcript;
};

struct SweepOptions {
  // Pipelines running at once. Steps within a pipeline stay sequential.
  int max_in_flight = 4;
  RunOptions run;
};

// Runs the pipeline for every (design, grid point) pair, each with its own
// provider from `factory`. Cells come back ordered by design, then point,
// whatever the completion order. Designs are keyed by origin, which must be
// unique. Per-point failures are recorded in the transcripts.
absl::StatusOr<std::vector<SweepCell>> SweepParams(const PipelineSpec& spec,
                                                   const std::vector<SourceText>& designs,
                                                   const std::vector<GenerationParams>& grid,
                                                   const ProviderFactory& factory,
                                                   const SweepOptions& options = {});

// One pass over the designs with the pipeline's own parameters.
absl::StatusOr<std::vector<Transcript>> RunBatch(const PipelineSpec& spec,
                                                 const std::vector<SourceText>& designs,
                                                 const ProviderFactory& factory,
                                                 const SweepOptions& options = {});

}  // namespace fsmguard

#endif  // FSMGUARD_LLM_SWEEP_H_
