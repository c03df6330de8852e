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

#ifndef FSMGUARD_LLM_HTTP_PROVIDER_H_
#define FSMGUARD_LLM_HTTP_PROVIDER_H_

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "fsmguard/llm/provider.h"

namespace fsmguard {

// {"model", "messages": [{"role", "content"}...], "temperature", "top_p",
//  "presence_penalty", "frequency_penalty", "max_tokens"}
std::string BuildChatRequestBody(const std::string& model, const std::vector<ChatMessage>& messages,
                                 const GenerationParams& params);

// choices[0].message.content of a chat-completions response.
absl::StatusOr<std::string> ParseChatResponseBody(std::string_view body);

// Maps an HTTP status onto the ChatProvider error contract.
absl::Status StatusForHttpCode(int code, std::string_view body);

class HttpProvider : public ChatProvider {
 public:
  // Reads the credential from the environment variable named in `config`.
  static absl::StatusOr<std::unique_ptr<HttpProvider>> Create(const ProviderConfig& config);

  HttpProvider(std::string endpoint, std::string model, std::string api_key, int timeout_seconds);

  absl::StatusOr<std::string> Complete(const std::vector<ChatMessage>& messages,
                                       const GenerationParams& params) override;
  std::string id() const override { return "http:" + model_; }

 private:
  std::string base_;
  std::string path_;
  std::string model_;
  std::string api_key_;
  int timeout_seconds_;
};

}  // namespace fsmguard

#endif  // FSMGUARD_LLM_HTTP_PROVIDER_H_
