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

#ifndef FSMGUARD_LLM_RESPONSE_PARSERS_H_
#define FSMGUARD_LLM_RESPONSE_PARSERS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace fsmguard {

// Content between the first `open` and its matching `close`, descending
// into the first nested `open` until none is left (innermost first). When
// `close` is one of ] ) }, bare partner brackets inside the content are
// balanced, so `reg [2:0]` does not end a `[code: ...]` block. The result is
// trimmed. Absent or unbalanced markers are an error.
absl::StatusOr<std::string> ExtractDelimited(std::string_view response, std::string_view open,
                                             std::string_view close);

// ExtractDelimited, then removes one enclosing `<` ... `>` pair if the whole
// trimmed content is wrapped in one.
absl::StatusOr<std::string> ParseDelimitedCode(std::string_view response, std::string_view open,
                                               std::string_view close);

struct PolicyVerdict {
  int policy = 0;
  bool violated = false;
  std::string explanation;
  std::optional<int> line;

  friend bool operator==(const PolicyVerdict&, const PolicyVerdict&) = default;
};

// Parses "Policy N: violated|not violated, explanation: ..., line no: L"
// blocks. An explanation runs until the next "Policy N:" line. For line
// ranges the first number is kept. The result is sorted by policy id and
// must hold exactly policies 1..policy_count.
absl::StatusOr<std::vector<PolicyVerdict>> ParsePolicyVerdicts(std::string_view response,
                                                               int policy_count);

struct LlmTransition {
  std::string from;
  std::string from_code;
  std::string to;
  std::string to_code;
};

struct LlmTransitionList {
  std::vector<LlmTransition> transitions;
  std::string protected_state;
  std::string protected_code;
};

// Reads "state transition N: A (1000) -> B (1100)" lines and the
// "protected_state: NAME (1110)" line. Accepts ->, → and \rightarrow.
absl::StatusOr<LlmTransitionList> ParseTransitionList(std::string_view response);

struct LlmFifRow {
  LlmTransition transition;
  std::vector<int> per_bit;
  int overall = 0;
};

// Reads one block per "State transition N: ..." header: the
// "Calculated FIF_i" table row and the last "= <digit>" of the
// "Overall FIF" line.
absl::StatusOr<std::vector<LlmFifRow>> ParseFifResults(std::string_view response);

}  // namespace fsmguard

#endif  // FSMGUARD_LLM_RESPONSE_PARSERS_H_
