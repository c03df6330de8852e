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

#include "fsmguard/llm/transcript.h"

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"

namespace fsmguard {

const StepRecord* Transcript::FindStep(const std::string& name) const {
  for (const StepRecord& step : steps) {
    if (step.name == name) return &step;
  }
  return nullptr;
}

OrderedJson TranscriptToJsonValue(const Transcript& transcript) {
  OrderedJson out;
  out["schema_version"] = Transcript::kSchemaVersion;
  out["pipeline"] = transcript.pipeline;
  out["design_id"] = transcript.design_id;
  out["provider"] = transcript.provider;
  out["failed"] = transcript.failed;
  out["failed_step"] = transcript.failed_step;
  out["error"] = transcript.error;
  OrderedJson steps = OrderedJson::array();
  for (const StepRecord& s : transcript.steps) {
    OrderedJson step;
    step["name"] = s.name;
    step["template"] = s.template_name;
    step["prompt"] = s.prompt;
    step["response"] = s.response;
    step["discarded"] = s.discarded;
    OrderedJson captures = OrderedJson::object();
    for (const auto& [k, v] : s.captures) captures[k] = v;
    step["captures"] = std::move(captures);
    step["attempts"] = s.attempts;
    step["elapsed_ms"] = s.elapsed_ms;
    step["params"] = GenerationParamsToJson(s.params);
    step["error"] = s.error;
    steps.push_back(std::move(step));
  }
  out["steps"] = std::move(steps);
  if (transcript.artifact.has_value()) {
    const Artifact& a = *transcript.artifact;
    OrderedJson artifact;
    artifact["kind"] = OutputKindName(a.kind);
    if (a.code.has_value()) artifact["code"] = *a.code;
    if (a.verdicts.has_value()) {
      OrderedJson verdicts = OrderedJson::array();
      for (const PolicyVerdict& v : *a.verdicts) {
        OrderedJson item;
        item["policy"] = v.policy;
        item["violated"] = v.violated;
        item["explanation"] = v.explanation;
        item["line"] = v.line.has_value() ? OrderedJson(*v.line) : OrderedJson(nullptr);
        verdicts.push_back(std::move(item));
      }
      artifact["verdicts"] = std::move(verdicts);
    }
    artifact["text"] = a.text;
    out["artifact"] = std::move(artifact);
  } else {
    out["artifact"] = nullptr;
  }
  return out;
}

std::string TranscriptToJson(const Transcript& transcript) {
  return TranscriptToJsonValue(transcript).dump(2) + "\n";
}

absl::StatusOr<Transcript> TranscriptFromJson(const nlohmann::json& value) {
  if (!value.is_object()) return absl::InvalidArgumentError("transcript must be an object");
  if (value.value("schema_version", 0) != Transcript::kSchemaVersion) {
    return absl::InvalidArgumentError(
        absl::StrCat("unsupported transcript schema_version ", value.value("schema_version", 0)));
  }
  Transcript t;
  try {
    t.pipeline = value.at("pipeline");
    t.design_id = value.at("design_id");
    t.provider = value.value("provider", "");
    t.failed = value.at("failed");
    t.failed_step = value.value("failed_step", "");
    t.error = value.value("error", "");
    for (const auto& s : value.at("steps")) {
      StepRecord step;
      step.name = s.at("name");
      step.template_name = s.value("template", "");
      step.prompt = s.at("prompt");
      step.response = s.at("response");
      step.discarded = s.value("discarded", std::vector<std::string>{});
      step.captures = s.value("captures", std::map<std::string, std::string>{});
      step.attempts = s.value("attempts", 0);
      step.elapsed_ms = s.value("elapsed_ms", int64_t{0});
      if (s.contains("params")) {
        auto params = GenerationParamsFromJson(s["params"]);
        if (!params.ok()) return params.status();
        step.params = *params;
      }
      step.error = s.value("error", "");
      t.steps.push_back(std::move(step));
    }
    const auto& a = value.at("artifact");
    if (!a.is_null()) {
      Artifact artifact;
      auto kind = ParseOutputKind(a.at("kind").get<std::string>());
      if (!kind.has_value()) return absl::InvalidArgumentError("unknown artifact kind");
      artifact.kind = *kind;
      if (a.contains("code")) artifact.code = a["code"].get<std::string>();
      if (a.contains("verdicts")) {
        std::vector<PolicyVerdict> verdicts;
        for (const auto& v : a["verdicts"]) {
          PolicyVerdict verdict;
          verdict.policy = v.at("policy");
          verdict.violated = v.at("violated");
          verdict.explanation = v.value("explanation", "");
          if (v.contains("line") && !v["line"].is_null()) verdict.line = v["line"].get<int>();
          verdicts.push_back(std::move(verdict));
        }
        artifact.verdicts = std::move(verdicts);
      }
      artifact.text = a.value("text", "");
      t.artifact = std::move(artifact);
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("transcript: ", e.what()));
  }
  return t;
}

}  // namespace fsmguard
