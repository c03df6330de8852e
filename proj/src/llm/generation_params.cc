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

#include "fsmguard/llm/generation_params.h"

#include <cmath>

#include "absl/status/status.h"
#include "absl/strings/str_format.h"

namespace fsmguard {
namespace {

absl::Status CheckRange(const char* name, double value, double lo, double hi, bool lo_open) {
  bool below = lo_open ? value <= lo : value < lo;
  if (!std::isfinite(value) || below || value > hi) {
    return absl::InvalidArgumentError(absl::StrFormat("%s = %g is outside %c%g, %g]", name, value,
                                                      lo_open ? '(' : '[', lo, hi));
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<GenerationParams> GenerationParams::Create(double temperature, double top_p,
                                                          double presence_penalty,
                                                          double frequency_penalty,
                                                          int max_tokens) {
  if (auto s = CheckRange("temperature", temperature, 0.0, 1.0, false); !s.ok()) return s;
  if (auto s = CheckRange("top_p", top_p, 0.0, 1.0, true); !s.ok()) return s;
  if (auto s = CheckRange("presence_penalty", presence_penalty, -2.0, 2.0, false); !s.ok()) {
    return s;
  }
  if (auto s = CheckRange("frequency_penalty", frequency_penalty, -2.0, 2.0, false); !s.ok()) {
    return s;
  }
  if (max_tokens < 1) {
    return absl::InvalidArgumentError(absl::StrFormat("max_tokens = %d must be positive", max_tokens));
  }
  GenerationParams params;
  params.temperature_ = temperature;
  params.top_p_ = top_p;
  params.presence_penalty_ = presence_penalty;
  params.frequency_penalty_ = frequency_penalty;
  params.max_tokens_ = max_tokens;
  return params;
}

absl::StatusOr<GenerationParams> GenerationParams::WithTemperature(double temperature) const {
  return Create(temperature, top_p_, presence_penalty_, frequency_penalty_, max_tokens_);
}

std::vector<GenerationParams> TemperatureGrid(const GenerationParams& base, int steps) {
  std::vector<GenerationParams> grid;
  if (steps < 1) return grid;
  for (int i = 0; i <= steps; ++i) {
    // i / steps is exact at both ends and never leaves [0, 1].
    grid.push_back(*base.WithTemperature(static_cast<double>(i) / steps));
  }
  return grid;
}

OrderedJson GenerationParamsToJson(const GenerationParams& params) {
  OrderedJson out;
  out["temperature"] = params.temperature();
  out["top_p"] = params.top_p();
  out["presence_penalty"] = params.presence_penalty();
  out["frequency_penalty"] = params.frequency_penalty();
  out["max_tokens"] = params.max_tokens();
  return out;
}

absl::StatusOr<GenerationParams> GenerationParamsFromJson(const nlohmann::json& value) {
  if (!value.is_object()) return absl::InvalidArgumentError("generation params must be an object");
  GenerationParams defaults;
  try {
    return GenerationParams::Create(
        value.value("temperature", defaults.temperature()), value.value("top_p", defaults.top_p()),
        value.value("presence_penalty", defaults.presence_penalty()),
        value.value("frequency_penalty", defaults.frequency_penalty()),
        value.value("max_tokens", defaults.max_tokens()));
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrFormat("generation params: %s", e.what()));
  }
}

}  // namespace fsmguard
