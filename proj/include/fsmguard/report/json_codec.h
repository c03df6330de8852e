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

#ifndef FSMGUARD_REPORT_JSON_CODEC_H_
#define FSMGUARD_REPORT_JSON_CODEC_H_

#include "absl/status/statusor.h"
#include "fsmguard/rtl/diagnostic.h"
#include "fsmguard/rules/check_report.h"
#include "fsmguard/rules/rules.h"
#include "fsmguard/rules/violation.h"
#include "json.hpp"

namespace fsmguard {

using OrderedJson = nlohmann::ordered_json;

OrderedJson SpanToJson(const Span& span);
OrderedJson DiagnosticToJson(const Diagnostic& diagnostic);
OrderedJson ViolationToJson(const RuleViolation& violation);
OrderedJson RuleConfigToJson(const RuleConfig& config);
OrderedJson CheckReportToJsonValue(const CheckReport& report);

// Accepts {"disabled": ["HD_NOT_ONE", ...], "include_self_edges": bool}.
// Unknown rule names are an error.
absl::StatusOr<RuleConfig> RuleConfigFromJson(const nlohmann::json& value);

}  // namespace fsmguard

#endif  // FSMGUARD_REPORT_JSON_CODEC_H_
