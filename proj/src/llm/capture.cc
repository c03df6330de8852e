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

#include "fsmguard/llm/capture.h"

#include <regex>
#include <vector>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "fsmguard/llm/response_parsers.h"
#include "fsmguard/util/text.h"

namespace fsmguard {
namespace {

absl::StatusOr<std::regex> Compile(const CaptureRule& rule) {
  try {
    auto flags = std::regex::ECMAScript;
    if (rule.ignore_case) flags |= std::regex::icase;
    return std::regex(rule.pattern, flags);
  } catch (const std::regex_error& e) {
    return absl::InvalidArgumentError(
        absl::StrCat("capture ", rule.name, ": bad pattern: ", e.what()));
  }
}

}  // namespace

CaptureRule CaptureRule::Delimited(std::string name, std::string open, std::string close) {
  CaptureRule rule;
  rule.name = std::move(name);
  rule.kind = Kind::kDelimited;
  rule.open = std::move(open);
  rule.close = std::move(close);
  return rule;
}

CaptureRule CaptureRule::Pattern(std::string name, std::string pattern, bool ignore_case) {
  CaptureRule rule;
  rule.name = std::move(name);
  rule.kind = Kind::kPattern;
  rule.pattern = std::move(pattern);
  rule.ignore_case = ignore_case;
  return rule;
}

absl::Status ValidateCaptureRule(const CaptureRule& rule) {
  if (rule.name.empty() || rule.name.find('.') != std::string::npos) {
    return absl::InvalidArgumentError(absl::StrCat("bad capture name '", rule.name, "'"));
  }
  if (rule.kind == CaptureRule::Kind::kDelimited) {
    if (rule.open.empty() || rule.close.empty()) {
      return absl::InvalidArgumentError(absl::StrCat("capture ", rule.name, ": empty marker"));
    }
    return absl::OkStatus();
  }
  if (rule.pattern.empty()) {
    return absl::InvalidArgumentError(absl::StrCat("capture ", rule.name, ": empty pattern"));
  }
  return Compile(rule).status();
}

absl::StatusOr<std::string> ApplyCapture(const CaptureRule& rule, std::string_view response) {
  if (auto s = ValidateCaptureRule(rule); !s.ok()) return s;
  if (rule.kind == CaptureRule::Kind::kDelimited) {
    auto value = ParseDelimitedCode(response, rule.open, rule.close);
    if (!value.ok()) {
      return absl::NotFoundError(absl::StrCat("capture ", rule.name, ": ", value.status().message()));
    }
    return value;
  }
  std::regex re = *Compile(rule);
  std::vector<std::string> values;
  for (const std::string& line : SplitLines(response)) {
    std::smatch m;
    if (std::regex_search(line, m, re, std::regex_constants::match_continuous)) {
      values.push_back(m.size() > 1 ? m[1].str() : m[0].str());
    }
  }
  if (values.empty()) {
    return absl::NotFoundError(absl::StrCat("capture ", rule.name, ": no line matches"));
  }
  return absl::StrJoin(values, "\n");
}

OrderedJson CaptureRuleToJson(const CaptureRule& rule) {
  OrderedJson out;
  out["name"] = rule.name;
  if (rule.kind == CaptureRule::Kind::kDelimited) {
    out["open"] = rule.open;
    out["close"] = rule.close;
  } else {
    out["pattern"] = rule.pattern;
    out["ignore_case"] = rule.ignore_case;
  }
  return out;
}

absl::StatusOr<CaptureRule> CaptureRuleFromJson(const nlohmann::json& value) {
  if (!value.is_object() || !value.contains("name") || !value["name"].is_string()) {
    return absl::InvalidArgumentError("capture rule needs a string \"name\"");
  }
  CaptureRule rule;
  try {
    if (value.contains("pattern")) {
      rule = CaptureRule::Pattern(value["name"], value["pattern"], value.value("ignore_case", false));
    } else {
      rule = CaptureRule::Delimited(value["name"], value.value("open", ""), value.value("close", ""));
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("capture rule: ", e.what()));
  }
  if (auto s = ValidateCaptureRule(rule); !s.ok()) return s;
  return rule;
}

}  // namespace fsmguard
