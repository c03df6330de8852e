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

#ifndef FSMGUARD_LLM_GENERATION_PARAMS_H_
#define FSMGUARD_LLM_GENERATION_PARAMS_H_

#include <vector>

#include "absl/status/statusor.h"
#include "fsmguard/report/json_codec.h"

namespace fsmguard {

// Sampling controls sent with every chat request. Instances are only
// obtainable through Create (or the default constructor), so a held value is
// always in range.
class GenerationParams {
 public:
  // temperature 0, top_p 1, no penalties, 2048 tokens.
  GenerationParams() = default;

  // temperature in [0, 1], top_p in (0, 1], penalties in [-2, 2],
  // max_tokens >= 1.
  static absl::StatusOr<GenerationParams> Create(double temperature, double top_p,
                                                 double presence_penalty,
                                                 double frequency_penalty, int max_tokens);

  double temperature() const { return temperature_; }
  double top_p() const { return top_p_; }
  double presence_penalty() const { return presence_penalty_; }
  double frequency_penalty() const { return frequency_penalty_; }
  int max_tokens() const { return max_tokens_; }

  absl::StatusOr<GenerationParams> WithTemperature(double temperature) const;

  friend bool operator==(const GenerationParams&, const GenerationParams&) = default;

 private:
  double temperature_ = 0.0;
  double top_p_ = 1.0;
  double presence_penalty_ = 0.0;
  double frequency_penalty_ = 0.0;
  int max_tokens_ = 2048;
};

// `steps + 1` points with temperature i / steps, other fields from `base`.
// The default is the 11-point sweep 0.0, 0.1, ..., 1.0.
std::vector<GenerationParams> TemperatureGrid(const GenerationParams& base = {}, int steps = 10);

OrderedJson GenerationParamsToJson(const GenerationParams& params);

// Missing fields keep their defaults.
absl::StatusOr<GenerationParams> GenerationParamsFromJson(const nlohmann::json& value);

}  // namespace fsmguard

#endif  // FSMGUARD_LLM_GENERATION_PARAMS_H_
