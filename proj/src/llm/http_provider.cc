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

#include "fsmguard/llm/http_provider.h"

#include <cstdlib>

#include "absl/strings/str_cat.h"
#include "httplib.h"
#include "json.hpp"

namespace fsmguard {

std::string BuildChatRequestBody(const std::string& model, const std::vector<ChatMessage>& messages,
                                 const GenerationParams& params) {
  OrderedJson body;
  body["model"] = model;
  OrderedJson list = OrderedJson::array();
  for (const ChatMessage& m : messages) {
    OrderedJson item;
    item["role"] = m.role;
    item["content"] = m.content;
    list.push_back(std::move(item));
  }
  body["messages"] = std::move(list);
  body["temperature"] = params.temperature();
  body["top_p"] = params.top_p();
  body["presence_penalty"] = params.presence_penalty();
  body["frequency_penalty"] = params.frequency_penalty();
  body["max_tokens"] = params.max_tokens();
  return body.dump();
}

absl::StatusOr<std::string> ParseChatResponseBody(std::string_view body) {
  auto json = nlohmann::json::parse(body, nullptr, false);
  if (json.is_discarded()) return absl::InternalError("provider response is not JSON");
  const nlohmann::json* content = nullptr;
  if (json.contains("choices") && json["choices"].is_array() && !json["choices"].empty()) {
    const auto& first = json["choices"][0];
    if (first.contains("message") && first["message"].contains("content")) {
      content = &first["message"]["content"];
    }
  }
  if (content == nullptr || !content->is_string()) {
    return absl::InternalError("provider response has no choices[0].message.content");
  }
  return content->get<std::string>();
}

absl::Status StatusForHttpCode(int code, std::string_view body) {
  std::string detail = absl::StrCat("HTTP ", code, ": ", std::string(body.substr(0, 200)));
  if (code >= 200 && code < 300) return absl::OkStatus();
  if (code == 401 || code == 403) return absl::UnauthenticatedError(detail);
  if (code == 429) return absl::ResourceExhaustedError(detail);
  if (code == 408 || code == 504) return absl::DeadlineExceededError(detail);
  if (code >= 500) return absl::UnavailableError(detail);
  return absl::InvalidArgumentError(detail);
}

absl::StatusOr<std::unique_ptr<HttpProvider>> HttpProvider::Create(const ProviderConfig& config) {
  if (config.endpoint.empty() || config.model.empty()) {
    return absl::InvalidArgumentError("http provider needs an endpoint and a model");
  }
  if (config.endpoint.find("://") == std::string::npos) {
    return absl::InvalidArgumentError(absl::StrCat("endpoint '", config.endpoint, "' has no scheme"));
  }
  const char* key = std::getenv(config.api_key_env.c_str());
  if (key == nullptr || *key == '\0') {
    return absl::UnauthenticatedError(absl::StrCat(config.api_key_env, " is not set"));
  }
  return std::make_unique<HttpProvider>(config.endpoint, config.model, key, config.timeout_seconds);
}

HttpProvider::HttpProvider(std::string endpoint, std::string model, std::string api_key,
                           int timeout_seconds)
    : model_(std::move(model)), api_key_(std::move(api_key)), timeout_seconds_(timeout_seconds) {
  size_t scheme = endpoint.find("://");
  size_t slash = scheme == std::string::npos ? endpoint.find('/') : endpoint.find('/', scheme + 3);
  if (slash == std::string::npos) {
    base_ = endpoint;
    path_ = "/v1/chat/completions";
  } else {
    base_ = endpoint.substr(0, slash);
    path_ = endpoint.substr(slash);
  }
}

absl::StatusOr<std::string> HttpProvider::Complete(const std::vector<ChatMessage>& messages,
                                                   const GenerationParams& params) {
  httplib::Client client(base_);
  if (!client.is_valid()) return absl::InvalidArgumentError(absl::StrCat("bad endpoint ", base_));
  client.set_connection_timeout(timeout_seconds_, 0);
  client.set_read_timeout(timeout_seconds_, 0);
  client.set_write_timeout(timeout_seconds_, 0);
  httplib::Headers headers{{"Authorization", absl::StrCat("Bearer ", api_key_)}};
  auto result = client.Post(path_, headers, BuildChatRequestBody(model_, messages, params),
                            "application/json");
  if (!result) {
    httplib::Error error = result.error();
    std::string what = httplib::to_string(error);
    if (error == httplib::Error::Read || error == httplib::Error::Write ||
        error == httplib::Error::ConnectionTimeout) {
      return absl::DeadlineExceededError(what);
    }
    return absl::UnavailableError(what);
  }
  if (auto status = StatusForHttpCode(result->status, result->body); !status.ok()) return status;
  return ParseChatResponseBody(result->body);
}

}  // namespace fsmguard
