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

#ifndef FSMGUARD_LLM_CAPTURE_H_
#define FSMGUARD_LLM_CAPTURE_H_

#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fsmguard/report/json_codec.h"

namespace fsmguard {

// Extracts a named value from a response, either between a pair of
// delimiters (ParseDelimitedCode rules) or from every line that matches a
// pattern at its start. A pattern capture yields group 1 when the pattern
// has a group and the whole match otherwise; matches are joined with '\n'.
struct CaptureRule {
  enum class Kind { kDelimited, kPattern };

  std::string name;
  Kind kind = Kind::kDelimited;
  std::string open;
  std::string close;
  std::string pattern;
  bool ignore_case = false;

  static CaptureRule Delimited(std::string name, std::string open, std::string close);
  static CaptureRule Pattern(std::string name, std::string pattern, bool ignore_case = false);
};

// Rejects empty names, names containing '.', empty markers and patterns
// that do not compile.
absl::Status ValidateCaptureRule(const CaptureRule& rule);

// A capture that finds nothing is an error, which the pipeline treats as a
// malformed response.
absl::StatusOr<std::string> ApplyCapture(const CaptureRule& rule, std::string_view response);

OrderedJson CaptureRuleToJson(const CaptureRule& rule);
// {"name", "open", "close"} or {"name", "pattern", "ignore_case"}.
absl::StatusOr<CaptureRule> CaptureRuleFromJson(const nlohmann::json& value);

}  // namespace fsmguard

#endif  // FSMGUARD_LLM_CAPTURE_H_
