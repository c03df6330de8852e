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

#ifndef FSMGUARD_REPORT_SCORING_H_
#define FSMGUARD_REPORT_SCORING_H_

#include <optional>
#include <vector>

#include "absl/status/statusor.h"
#include "fsmguard/corpus/corpus.h"
#include "fsmguard/inject/vuln_class.h"
#include "fsmguard/llm/transcript.h"
#include "fsmguard/report/metrics.h"
#include "fsmguard/rules/rules.h"

namespace fsmguard {

struct ScoreOptions {
  Task task = Task::kDetection;
  // Detection: ground truth becomes "the checker reports this rule on the
  // record's source and protected set" instead of "labels are non-empty",
  // and rows are keyed by the rule. Mitigation: the only target rule.
  // Defaults to FIF_NONZERO for the fif pipeline.
  std::optional<RuleId> focus;
  // Insertion: the class the model was asked to insert. Defaults to
  // STATIC_DEADLOCK for the deadlock_insertion pipeline.
  std::optional<VulnClass> intended;
  RuleConfig rules;
};

// Detection verdict read from a transcript: policy verdicts, FIF overall
// captures, or class keywords in a free-text answer. Empty when the run
// failed or nothing could be read.
std::optional<bool> PredictedViolation(const Transcript& transcript);

// Scores each transcript against the corpus record whose id equals its
// design_id. Failed runs are unsuccessful. A transcript without a record is
// an error.
absl::StatusOr<std::vector<Outcome>> ScoreTranscripts(const std::vector<Transcript>& transcripts,
                                                      const std::vector<CorpusRecord>& records,
                                                      const ScoreOptions& options);

}  // namespace fsmguard

#endif  // FSMGUARD_REPORT_SCORING_H_
