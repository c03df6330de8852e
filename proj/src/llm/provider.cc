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

#include "fsmguard/llm/provider.h"

#include <algorithm>
#include <cmath>
#include <random>
#include <thread>

#include "absl/strings/str_cat.h"
#include "fsmguard/llm/http_provider.h"
#include "fsmguard/llm/mock_provider.h"
#include "fsmguard/util/file_io.h"

namespace fsmguard {

bool IsRetryable(const absl::Status& status) {
  return absl::IsResourceExhausted(status) || absl::IsDeadlineExceeded(status) ||
         absl::IsUnavailable(status);
}

SleepFn RealSleep() {
  return [](std::chrono::milliseconds delay) { std::this_thread::sleep_for(delay); };
}

ChatOutcome ChatComplete(ChatProvider& provider, const std::vector<ChatMessage>& messages,
                         const GenerationParams& params, const RetryPolicy& policy,
                         const SleepFn& sleep, uint64_t jitter_seed) {
  std::mt19937_64 engine(jitter_seed);
  ChatOutcome outcome;
  double backoff = policy.initial_backoff_ms;
  int max_attempts = std::max(1, policy.max_attempts);
  while (true) {
    ++outcome.attempts;
    outcome.response = provider.Complete(messages, params);
    if (outcome.response.ok() || !IsRetryable(outcome.response.status()) ||
        outcome.attempts >= max_attempts) {
      return outcome;
    }
    // 53 random bits mapped onto [-1, 1).
    double unit = static_cast<double>(engine() >> 11) * 0x1.0p-53 * 2.0 - 1.0;
    double delay = std::min<double>(backoff, policy.max_backoff_ms) * (1.0 + policy.jitter * unit);
    auto ms = static_cast<int64_t>(std::llround(std::max(0.0, delay)));
    outcome.backoffs_ms.push_back(ms);
    if (sleep) sleep(std::chrono::milliseconds(ms));
    backoff *= policy.multiplier;
  }
}

absl::StatusOr<ProviderConfig> ProviderConfigFromJson(const nlohmann::json& value) {
  if (!value.is_object()) return absl::InvalidArgumentError("provider config must be an object");
  ProviderConfig config;
  try {
    config.kind = value.value("kind", config.kind);
    config.endpoint = value.value("endpoint", config.endpoint);
    config.model = value.value("model", config.model);
    config.api_key_env = value.value("api_key_env", config.api_key_env);
    config.timeout_seconds = value.value("timeout_seconds", config.timeout_seconds);
    config.max_prompt_chars = value.value("max_prompt_chars", config.max_prompt_chars);
    config.max_in_flight = value.value("max_in_flight", config.max_in_flight);
    config.mock_script = value.value("mock_script", config.mock_script);
    if (value.contains("retry")) {
      const auto& r = value["retry"];
      config.retry.max_attempts = r.value("max_attempts", config.retry.max_attempts);
      config.retry.initial_backoff_ms = r.value("initial_backoff_ms", config.retry.initial_backoff_ms);
      config.retry.multiplier = r.value("multiplier", config.retry.multiplier);
      config.retry.max_backoff_ms = r.value("max_backoff_ms", config.retry.max_backoff_ms);
      config.retry.jitter = r.value("jitter", config.retry.jitter);
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat("provider config: ", e.what()));
  }
  if (config.kind != "mock" && config.kind != "http") {
    return absl::InvalidArgumentError(absl::StrCat("unknown provider kind '", config.kind, "'"));
  }
  if (config.max_in_flight < 1 || config.retry.max_attempts < 1 || config.retry.jitter < 0 ||
      config.retry.jitter > 1 || config.retry.multiplier < 1) {
    return absl::InvalidArgumentError("provider config: limits out of range");
  }
  return config;
}

absl::StatusOr<ProviderFactory> MakeProviderFactory(const ProviderConfig& config) {
  if (config.kind == "mock") {
    if (config.mock_script.empty()) {
      return absl::InvalidArgumentError("mock provider needs a mock_script file");
    }
    auto text = ReadFile(config.mock_script);
    if (!text.ok()) return text.status();
    auto script = ParseMockScript(*text);
    if (!script.ok()) return script.status();
    auto shared = std::make_shared<const MockScript>(*std::move(script));
    return ProviderFactory([shared]() -> std::unique_ptr<ChatProvider> {
      return std::make_unique<MockProvider>(shared);
    });
  }
  auto probe = HttpProvider::Create(config);
  if (!probe.ok()) return probe.status();
  return ProviderFactory([config]() -> std::unique_ptr<ChatProvider> {
    return *HttpProvider::Create(config);
  });
}

}  // namespace fsmguard
