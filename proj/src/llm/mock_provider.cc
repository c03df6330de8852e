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

#include "fsmguard/llm/mock_provider.h"

#include <optional>
#include <regex>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_join.h"
#include "fsmguard/util/text.h"

namespace fsmguard {
namespace {

std::optional<absl::Status> ErrorDirective(std::string_view body) {
  std::string kind = TrimAscii(body.substr(6));
  if (kind == "rate_limit") return absl::ResourceExhaustedError("mock: rate limited");
  if (kind == "auth") return absl::UnauthenticatedError("mock: invalid credential");
  if (kind == "timeout") return absl::DeadlineExceededError("mock: timed out");
  if (kind == "unavailable") return absl::UnavailableError("mock: server unavailable");
  return std::nullopt;
}

}  // namespace

absl::StatusOr<MockScript> ParseMockScript(std::string_view text) {
  static const std::regex kSeparator(R"(^---\s*step\s+(\d+)\s*---\s*$)", std::regex::icase);
  MockScript script;
  std::optional<int> step;
  std::vector<std::string> body;
  auto flush = [&]() -> absl::Status {
    if (!step.has_value()) {
      for (const std::string& line : body) {
        if (!TrimAscii(line).empty()) {
          return absl::InvalidArgumentError("mock script text before the first step separator");
        }
      }
      return absl::OkStatus();
    }
    while (!body.empty() && TrimAscii(body.back()).empty()) body.pop_back();
    std::string response = absl::StrJoin(body, "\n");
    MockScript::Entry entry;
    std::string trimmed = TrimAscii(response);
    if (trimmed.rfind("!error", 0) == 0) {
      auto error = ErrorDirective(trimmed);
      if (!error.has_value()) {
        return absl::InvalidArgumentError(absl::StrCat("unknown mock directive '", trimmed, "'"));
      }
      entry.error = *error;
    } else {
      entry.response = std::move(response);
    }
    script.steps[*step].push_back(std::move(entry));
    return absl::OkStatus();
  };
  for (std::string& line : SplitLines(text)) {
    std::smatch m;
    if (std::regex_match(line, m, kSeparator)) {
      if (auto s = flush(); !s.ok()) return s;
      step = std::stoi(m[1].str());
      if (*step < 1) return absl::InvalidArgumentError("mock script steps start at 1");
      body.clear();
    } else {
      body.push_back(std::move(line));
    }
  }
  if (auto s = flush(); !s.ok()) return s;
  if (script.steps.empty()) return absl::InvalidArgumentError("mock script has no steps");
  return script;
}

MockProvider::MockProvider(std::shared_ptr<const MockScript> script) : script_(std::move(script)) {}

absl::StatusOr<std::string> MockProvider::Complete(const std::vector<ChatMessage>& messages,
                                                   const GenerationParams&) {
  int step = 0;
  for (const ChatMessage& m : messages) step += m.role == "user";
  std::lock_guard<std::mutex> lock(mu_);
  requests_.push_back(messages);
  auto it = script_->steps.find(step);
  size_t& next = next_[step];
  if (it == script_->steps.end() || next >= it->second.size()) {
    return absl::FailedPreconditionError(
        absl::StrCat("mock script has no more responses for step ", step));
  }
  const MockScript::Entry& entry = it->second[next++];
  if (!entry.error.ok()) return entry.error;
  return entry.response;
}

std::vector<std::vector<ChatMessage>> MockProvider::requests() const {
  std::lock_guard<std::mutex> lock(mu_);
  return requests_;
}

}  // namespace fsmguard
