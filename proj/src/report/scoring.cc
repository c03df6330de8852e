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

#include "fsmguard/report/scoring.h"

#include <algorithm>
#include <map>
#include <regex>

#include "absl/status/status.h"
#include "absl/strings/ascii.h"
#include "absl/strings/str_cat.h"
#include "fsmguard/corpus/fidelity.h"
#include "fsmguard/rules/check_report.h"
#include "fsmguard/util/text.h"

namespace fsmguard {
namespace {

// Free-text answers: an explicit "no issues" wins, otherwise any defect
// term counts as a reported violation.
std::optional<bool> ReadFreeText(const std::string& text) {
  std::string lower = absl::AsciiStrToLower(text);
  static const std::regex kNegative(
      R"(\b(no|not any|does not have any|doesn't have any)\s+(obvious\s+)?(security\s+)?(issues?|vulnerabilit(y|ies)|problems?)\b)");
  static const std::regex kPositive(
      R"(\b(deadlock|unreachable|duplicate|default|infinite loop|trap|stuck|cwe-?835|vulnerab\w*|violat\w*))");
  if (std::regex_search(lower, kNegative)) return false;
  if (std::regex_search(lower, kPositive)) return true;
  return std::nullopt;
}

std::optional<RuleId> DefaultFocus(const Transcript& t, const ScoreOptions& options) {
  if (options.focus) return options.focus;
  if (options.task == Task::kDetection && t.pipeline == "fif") return RuleId::kFifNonzero;
  return std::nullopt;
}

}  // namespace

std::optional<bool> PredictedViolation(const Transcript& transcript) {
  if (transcript.failed) return std::nullopt;
  if (transcript.artifact && transcript.artifact->verdicts) {
    const std::vector<PolicyVerdict>& verdicts = *transcript.artifact->verdicts;
    return std::any_of(verdicts.begin(), verdicts.end(),
                       [](const PolicyVerdict& v) { return v.violated; });
  }
  for (auto it = transcript.steps.rbegin(); it != transcript.steps.rend(); ++it) {
    auto overall = it->captures.find("overall");
    if (overall == it->captures.end()) continue;
    std::optional<bool> any;
    for (const std::string& line : SplitLines(overall->second)) {
      std::string value = TrimAscii(line);
      if (value == "1") return true;
      if (value == "0") any = false;
    }
    return any;
  }
  if (transcript.artifact) return ReadFreeText(transcript.artifact->text);
  return std::nullopt;
}

absl::StatusOr<std::vector<Outcome>> ScoreTranscripts(const std::vector<Transcript>& transcripts,
                                                      const std::vector<CorpusRecord>& records,
                                                      const ScoreOptions& options) {
  std::map<std::string, const CorpusRecord*> by_id;
  for (const CorpusRecord& r : records) by_id[r.id] = &r;
  std::vector<Outcome> out;
  for (const Transcript& t : transcripts) {
    auto found = by_id.find(t.design_id);
    if (found == by_id.end()) {
      return absl::NotFoundError(absl::StrCat("no label for design ", t.design_id));
    }
    const CorpusRecord& record = *found->second;
    Outcome outcome;
    outcome.task = options.task;
    outcome.design_id = t.design_id;
    outcome.cls = record.vuln ? VulnClassName(*record.vuln) : "CLEAN";
    if (!t.steps.empty()) outcome.temperature = t.steps.front().params.temperature();
    SourceText original{record.source, record.id};
    const std::optional<std::string> code =
        t.failed || !t.artifact ? std::nullopt : t.artifact->code;
    switch (options.task) {
      case Task::kDetection: {
        std::optional<RuleId> focus = DefaultFocus(t, options);
        bool truth = !record.labels.empty();
        if (focus) {
          outcome.cls = RuleIdName(*focus);
          truth = RunAllChecks(original, record.protected_names, options.rules).Count(*focus) > 0;
        }
        std::optional<bool> predicted = PredictedViolation(t);
        outcome.success = predicted.has_value() && *predicted == truth;
        break;
      }
      case Task::kInsertion: {
        std::optional<VulnClass> intended = options.intended;
        if (!intended && t.pipeline == "deadlock_insertion") {
          intended = VulnClass::kStaticDeadlock;
        }
        if (!intended) {
          return absl::InvalidArgumentError(
              absl::StrCat("no intended class for pipeline ", t.pipeline));
        }
        outcome.cls = VulnClassName(*intended);
        outcome.success =
            code && VerifyInsertion(original, SourceText{*code, t.design_id}, *intended,
                                    record.protected_names, options.rules)
                        .overall;
        break;
      }
      case Task::kMitigation: {
        std::vector<RuleId> targets =
            options.focus ? std::vector<RuleId>{*options.focus} : record.labels;
        outcome.success =
            code && VerifyMitigation(original, SourceText{*code, t.design_id}, targets,
                                     record.protected_names, options.rules)
                        .overall;
        break;
      }
    }
    out.push_back(std::move(outcome));
  }
  return out;
}

}  // namespace fsmguard
