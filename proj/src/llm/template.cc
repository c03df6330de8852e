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

#include "fsmguard/llm/template.h"

#include <cctype>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace fsmguard {
namespace {

constexpr std::string_view kOpen = "{{";
constexpr std::string_view kClose = "}}";

bool IsKeyChar(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
}

bool IsIdentChar(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_'; }

absl::StatusOr<Placeholder> ParseOne(std::string_view inner) {
  Placeholder p;
  if (inner == "design") return p;
  auto colon = inner.find(':');
  if (colon == std::string_view::npos) {
    return absl::InvalidArgumentError(absl::StrCat("unknown placeholder {{", std::string(inner), "}}"));
  }
  std::string_view kind = inner.substr(0, colon);
  std::string_view key = inner.substr(colon + 1);
  bool key_ok = !key.empty();
  for (char c : key) key_ok = key_ok && IsKeyChar(c);
  if (!key_ok) {
    return absl::InvalidArgumentError(absl::StrCat("malformed placeholder {{", std::string(inner), "}}"));
  }
  if (kind == "capture") {
    auto dot = key.find('.');
    if (dot == std::string_view::npos || dot == 0 || dot + 1 == key.size() ||
        key.find('.', dot + 1) != std::string_view::npos) {
      return absl::InvalidArgumentError(
          absl::StrCat("capture placeholder {{", std::string(inner), "}} must be <step>.<name>"));
    }
    p.kind = Placeholder::Kind::kCapture;
  } else if (kind == "literal") {
    p.kind = Placeholder::Kind::kLiteral;
  } else {
    return absl::InvalidArgumentError(absl::StrCat("unknown placeholder {{", std::string(inner), "}}"));
  }
  p.key = std::string(key);
  return p;
}

// Calls `fn(begin, end, placeholder)` for each placeholder.
template <typename Fn>
absl::Status Scan(std::string_view body, Fn fn) {
  size_t pos = 0;
  while ((pos = body.find(kOpen, pos)) != std::string_view::npos) {
    size_t end = body.find(kClose, pos + kOpen.size());
    if (end == std::string_view::npos) {
      return absl::InvalidArgumentError(absl::StrCat("unterminated placeholder at offset ", pos));
    }
    auto p = ParseOne(body.substr(pos + kOpen.size(), end - pos - kOpen.size()));
    if (!p.ok()) return p.status();
    if (auto s = fn(pos, end + kClose.size(), *p); !s.ok()) return s;
    pos = end + kClose.size();
  }
  return absl::OkStatus();
}

}  // namespace

std::string OutputKindName(OutputKind kind) {
  switch (kind) {
    case OutputKind::kCode:
      return "code";
    case OutputKind::kTable:
      return "table";
    case OutputKind::kPolicyVerdicts:
      return "policy_verdicts";
    case OutputKind::kFreeText:
      return "free_text";
  }
  return "free_text";
}

std::optional<OutputKind> ParseOutputKind(std::string_view name) {
  for (OutputKind kind : {OutputKind::kCode, OutputKind::kTable, OutputKind::kPolicyVerdicts,
                          OutputKind::kFreeText}) {
    if (OutputKindName(kind) == name) return kind;
  }
  return std::nullopt;
}

std::string Placeholder::Text() const {
  switch (kind) {
    case Kind::kDesign:
      return "{{design}}";
    case Kind::kCapture:
      return absl::StrCat("{{capture:", key, "}}");
    case Kind::kLiteral:
      return absl::StrCat("{{literal:", key, "}}");
  }
  return "";
}

absl::StatusOr<std::vector<Placeholder>> ParsePlaceholders(std::string_view body) {
  std::vector<Placeholder> out;
  auto status = Scan(body, [&out](size_t, size_t, const Placeholder& p) {
    out.push_back(p);
    return absl::OkStatus();
  });
  if (!status.ok()) return status;
  return out;
}

absl::StatusOr<std::string> RenderPrompt(const PromptTemplate& tmpl, const Bindings& bindings,
                                         size_t design_char_budget) {
  std::string out;
  size_t copied = 0;
  auto status = Scan(tmpl.body, [&](size_t begin, size_t end, const Placeholder& p) -> absl::Status {
    out.append(tmpl.body, copied, begin - copied);
    copied = end;
    switch (p.kind) {
      case Placeholder::Kind::kDesign: {
        if (!bindings.design.has_value()) {
          return absl::InvalidArgumentError(absl::StrCat("unbound placeholder ", p.Text()));
        }
        if (design_char_budget > 0 && bindings.design->size() > design_char_budget) {
          return absl::ResourceExhaustedError(absl::StrFormat(
              "design payload of %d characters exceeds the budget of %d; provide a "
              "module-level region",
              bindings.design->size(), design_char_budget));
        }
        absl::StrAppend(&out, tmpl.design_open, *bindings.design, tmpl.design_close);
        return absl::OkStatus();
      }
      case Placeholder::Kind::kCapture:
      case Placeholder::Kind::kLiteral: {
        const auto& map =
            p.kind == Placeholder::Kind::kCapture ? bindings.captures : bindings.literals;
        auto it = map.find(p.key);
        if (it == map.end()) {
          return absl::InvalidArgumentError(absl::StrCat("unbound placeholder ", p.Text()));
        }
        out += it->second;
        return absl::OkStatus();
      }
    }
    return absl::OkStatus();
  });
  if (!status.ok()) return status;
  out.append(tmpl.body, copied, std::string::npos);
  return out;
}

absl::StatusOr<std::string> ModuleRegion(std::string_view source, std::string_view module_name) {
  size_t pos = 0;
  while ((pos = source.find("module", pos)) != std::string_view::npos) {
    bool word_start = pos == 0 || !IsIdentChar(source[pos - 1]);
    size_t after = pos + 6;
    if (!word_start || after >= source.size() || IsIdentChar(source[after])) {
      pos = after;
      continue;
    }
    size_t name_begin = after;
    while (name_begin < source.size() && std::isspace(static_cast<unsigned char>(source[name_begin]))) {
      ++name_begin;
    }
    size_t name_end = name_begin;
    while (name_end < source.size() && IsIdentChar(source[name_end])) ++name_end;
    if (source.substr(name_begin, name_end - name_begin) == module_name) {
      size_t end = name_end;
      while ((end = source.find("endmodule", end)) != std::string_view::npos) {
        bool ok = (end == 0 || !IsIdentChar(source[end - 1])) &&
                  (end + 9 >= source.size() || !IsIdentChar(source[end + 9]));
        if (ok) return std::string(source.substr(pos, end + 9 - pos));
        end += 9;
      }
      return absl::InvalidArgumentError(
          absl::StrCat("module ", std::string(module_name), " has no endmodule"));
    }
    pos = after;
  }
  return absl::NotFoundError(absl::StrCat("no module named ", std::string(module_name)));
}

}  // namespace fsmguard
