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

#ifndef FSMGUARD_LLM_MOCK_PROVIDER_H_
#define FSMGUARD_LLM_MOCK_PROVIDER_H_

#include <deque>
#include <map>
#include <memory>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fsmguard/llm/provider.h"

namespace fsmguard {

// A script is plain text split by "--- step N ---" lines. Each section is
// one canned reply for pipeline step N; repeat a step to script retries. A
// section consisting of "!error rate_limit|auth|timeout|unavailable" fails
// that call instead.
struct MockScript {
  struct Entry {
    std::string response;
    absl::Status error;
  };
  std::map<int, std::vector<Entry>> steps;
};

absl::StatusOr<MockScript> ParseMockScript(std::string_view text);

// Replays a script. The step of a request is the number of user messages in
// it, so a retried request reads the next entry of the same step.
class MockProvider : public ChatProvider {
 public:
  explicit MockProvider(std::shared_ptr<const MockScript> script);

  absl::StatusOr<std::string> Complete(const std::vector<ChatMessage>& messages,
                                       const GenerationParams& params) override;
  std::string id() const override { return "mock"; }

  // Requests received, in order.
  std::vector<std::vector<ChatMessage>> requests() const;

 private:
  std::shared_ptr<const MockScript> script_;
  mutable std::mutex mu_;
  std::map<int, size_t> next_;
  std::vector<std::vector<ChatMessage>> requests_;
};

}  // namespace fsmguard

#endif  // FSMGUARD_LLM_MOCK_PROVIDER_H_
