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

#ifndef FSMGUARD_LLM_PROVIDER_H_
#define FSMGUARD_LLM_PROVIDER_H_

#include <chrono>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fsmguard/llm/generation_params.h"
#include "fsmguard/report/json_codec.h"

namespace fsmguard {

struct ChatMessage {
  std::string role;
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

// Error contract for Complete:
//   kUnauthenticated     bad or missing credential (never retried)
//   kResourceExhausted   rate limited
//   kDeadlineExceeded    timed out
//   kUnavailable         transport or server failure
// Anything else is treated as permanent.
class ChatProvider {
 public:
  virtual ~ChatProvider() = default;
  virtual absl::StatusOr<std::string> Complete(const std::vector<ChatMessage>& messages,
                                               const GenerationParams& params) = 0;
  virtual std::string id() const = 0;
};

struct RetryPolicy {
  // Total tries per request, including the first.
  int max_attempts = 4;
  int initial_backoff_ms = 500;
  double multiplier = 2.0;
  int max_backoff_ms = 8000;
  // Each delay is scaled by a factor drawn from [1 - jitter, 1 + jitter].
  double jitter = 0.25;
};

bool IsRetryable(const absl::Status& status);

using SleepFn = std::function<void(std::chrono::milliseconds)>;
SleepFn RealSleep();

struct ChatOutcome {
  absl::StatusOr<std::string> response;
  int attempts = 0;
  std::vector<int64_t> backoffs_ms;
};

// Sends one request, retrying retryable failures with exponential backoff
// and jitter. The jitter sequence is a function of `jitter_seed`.
ChatOutcome ChatComplete(ChatProvider& provider, const std::vector<ChatMessage>& messages,
                         const GenerationParams& params, const RetryPolicy& policy,
                         const SleepFn& sleep, uint64_t jitter_seed = 0);

struct ProviderConfig {
  // "mock" or "http".
  std::string kind = "mock";
  // Full chat-completions URL, e.g. https://host/v1/chat/completions.
  std::string endpoint;
  std::string model;
  std::string api_key_env = "FSMGUARD_API_KEY";
  int timeout_seconds = 120;
  // Largest design payload sent in one prompt; 0 disables the check.
  size_t max_prompt_chars = 0;
  int max_in_flight = 4;
  RetryPolicy retry;
  // Script file for the mock provider.
  std::string mock_script;
};

absl::StatusOr<ProviderConfig> ProviderConfigFromJson(const nlohmann::json& value);

// Builds one provider per pipeline run. Resources shared between runs (the
// parsed mock script, the credential) are loaded once, here.
using ProviderFactory = std::function<std::unique_ptr<ChatProvider>()>;
absl::StatusOr<ProviderFactory> MakeProviderFactory(const ProviderConfig& config);

}  // namespace fsmguard

#endif  // FSMGUARD_LLM_PROVIDER_H_
