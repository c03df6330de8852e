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

#ifndef FSMGUARD_LLM_TEMPLATE_H_
#define FSMGUARD_LLM_TEMPLATE_H_

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace fsmguard {

enum class OutputKind { kCode, kTable, kPolicyVerdicts, kFreeText };

std::string OutputKindName(OutputKind kind);
std::optional<OutputKind> ParseOutputKind(std::string_view name);

// Body placeholders:
//   {{design}}               the design payload, wrapped in design_open/close
//   {{capture:<step>.<name>}} a value captured by an earlier pipeline step
//   {{literal:<key>}}        a caller-supplied value
struct PromptTemplate {
  std::string name;
  std::string body;
  OutputKind expected_output = OutputKind::kFreeText;
  std::string design_open = "<";
  std::string design_close = ">";
  // Markers around the code artifact in a kCode response.
  std::string code_open;
  std::string code_close;
};

struct Placeholder {
  enum class Kind { kDesign, kCapture, kLiteral };
  Kind kind = Kind::kDesign;
  // "step.name" for captures, the key for literals, empty for the design.
  std::string key;
  std::string Text() const;
};

// Placeholders in order of appearance. A malformed `{{...}}` is an error.
absl::StatusOr<std::vector<Placeholder>> ParsePlaceholders(std::string_view body);

struct Bindings {
  std::optional<std::string> design;
  // Keyed "step.name".
  std::map<std::string, std::string> captures;
  std::map<std::string, std::string> literals;
};

// Substitutes every placeholder. An unbound placeholder is an error naming
// it. With a nonzero `design_char_budget`, a larger design payload is
// rejected before anything is sent.
absl::StatusOr<std::string> RenderPrompt(const PromptTemplate& tmpl, const Bindings& bindings,
                                         size_t design_char_budget = 0);

// The text of `module <name> ... endmodule`, for binding one module of a
// larger source instead of the whole file.
absl::StatusOr<std::string> ModuleRegion(std::string_view source, std::string_view module_name);

}  // namespace fsmguard

#endif  // FSMGUARD_LLM_TEMPLATE_H_
