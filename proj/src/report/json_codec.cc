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

#include "fsmguard/report/json_codec.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace fsmguard {
namespace {

OrderedJson EvidenceToJson(const Evidence& evidence) {
  OrderedJson out = OrderedJson::object();
  std::visit(
      [&out](const auto& e) {
        using T = std::decay_t<decltype(e)>;
        if constexpr (std::is_same_v<T, FifEvidence>) {
          OrderedJson bits = OrderedJson::array();
          for (const FifBit& bit : e.result.per_bit) {
            OrderedJson b;
            b["index"] = bit.triple.index;
            b["bx"] = bit.triple.bx ? 1 : 0;
            b["by"] = bit.triple.by ? 1 : 0;
            b["bp"] = bit.triple.bp ? 1 : 0;
            b["fif"] = bit.fif ? 1 : 0;
            bits.push_back(std::move(b));
          }
          out["per_bit"] = std::move(bits);
          out["overall"] = e.result.overall ? 1 : 0;
        } else if constexpr (std::is_same_v<T, HdEvidence>) {
          out["distance"] = e.distance;
        } else if constexpr (std::is_same_v<T, DeadlockEvidence>) {
          out["entered_from"] = e.entered_from;
        } else if constexpr (std::is_same_v<T, TrapEvidence>) {
          out["members"] = e.members;
          out["entered_from"] = e.entered_from;
        } else if constexpr (std::is_same_v<T, UnreachableEvidence>) {
          out["has_outgoing"] = e.has_outgoing;
        } else if constexpr (std::is_same_v<T, DuplicateEvidence>) {
          out["encoding"] = e.encoding.ToBits();
        } else if constexpr (std::is_same_v<T, MissingDefaultEvidence>) {
          OrderedJson codes = OrderedJson::array();
          for (const Encoding& code : e.unused) codes.push_back(code.ToBits());
          out["unused"] = std::move(codes);
          out["unused_count"] = e.unused_count;
        }
      },
      evidence);
  return out;
}

}  // namespace

OrderedJson SpanToJson(const Span& span) {
  OrderedJson out;
  out["first_line"] = span.first_line;
  out["last_line"] = span.last_line;
  return out;
}

OrderedJson DiagnosticToJson(const Diagnostic& diagnostic) {
  OrderedJson out;
  out["severity"] = std::string(SeverityName(diagnostic.severity));
  out["code"] = diagnostic.code;
  out["message"] = diagnostic.message;
  out["span"] = SpanToJson(diagnostic.span);
  return out;
}

OrderedJson ViolationToJson(const RuleViolation& violation) {
  OrderedJson out;
  out["rule"] = RuleIdName(violation.rule);
  out["states"] = violation.locus.states;
  if (violation.locus.transition) {
    out["transition"] = {{"from", violation.locus.transition->first},
                         {"to", violation.locus.transition->second}};
  }
  out["span"] = SpanToJson(violation.locus.span);
  out["explanation"] = violation.Explanation();
  out["evidence"] = EvidenceToJson(violation.evidence);
  return out;
}

OrderedJson RuleConfigToJson(const RuleConfig& config) {
  OrderedJson out;
  OrderedJson disabled = OrderedJson::array();
  for (RuleId rule : AllRules()) {
    if (!config.Enabled(rule)) disabled.push_back(RuleIdName(rule));
  }
  out["disabled"] = std::move(disabled);
  out["include_self_edges"] = config.include_self_edges;
  return out;
}

OrderedJson CheckReportToJsonValue(const CheckReport& report) {
  OrderedJson out;
  out["schema_version"] = CheckReport::kSchemaVersion;
  out["design"] = report.design_id;
  out["parsed"] = report.parsed;
  out["protected"] = report.protected_states;
  out["config"] = RuleConfigToJson(report.config);
  OrderedJson skipped = OrderedJson::array();
  for (const NotEvaluated& n : report.not_evaluated) {
    skipped.push_back({{"rule", RuleIdName(n.rule)}, {"reason", n.reason}});
  }
  out["not_evaluated"] = std::move(skipped);
  OrderedJson violations = OrderedJson::array();
  for (const RuleViolation& v : report.violations) violations.push_back(ViolationToJson(v));
  out["violations"] = std::move(violations);
  OrderedJson diagnostics = OrderedJson::array();
  for (const Diagnostic& d : report.diagnostics) diagnostics.push_back(DiagnosticToJson(d));
  out["diagnostics"] = std::move(diagnostics);
  return out;
}

absl::StatusOr<RuleConfig> RuleConfigFromJson(const nlohmann::json& value) {
  RuleConfig config;
  if (!value.is_object()) return absl::InvalidArgumentError("rule config must be an object");
  if (value.contains("disabled")) {
    if (!value["disabled"].is_array()) {
      return absl::InvalidArgumentError("rules.disabled must be an array");
    }
    for (const auto& item : value["disabled"]) {
      if (!item.is_string()) return absl::InvalidArgumentError("rule names must be strings");
      std::optional<RuleId> rule = ParseRuleId(item.get<std::string>());
      if (!rule) {
        return absl::InvalidArgumentError(
            absl::StrCat("unknown rule ", item.get<std::string>()));
      }
      config.disabled.insert(*rule);
    }
  }
  if (value.contains("include_self_edges")) {
    if (!value["include_self_edges"].is_boolean()) {
      return absl::InvalidArgumentError("include_self_edges must be a boolean");
    }
    config.include_self_edges = value["include_self_edges"].get<bool>();
  }
  return config;
}

}  // namespace fsmguard
