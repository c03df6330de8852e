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

#include "fsmguard/rtl/diagnostic.h"

#include <algorithm>

#include "absl/strings/str_cat.h"

namespace fsmguard {

Span Span::Merge(const Span& other) const {
  if (!valid()) return other;
  if (!other.valid()) return *this;
  return Span{std::min(first_line, other.first_line),
              std::max(last_line, other.last_line)};
}

int LineCount(const std::string& content) {
  if (content.empty()) return 0;
  int lines = static_cast<int>(std::count(content.begin(), content.end(), '\n'));
  if (content.back() != '\n') ++lines;
  return lines;
}

std::string_view SeverityName(Severity severity) {
  return severity == Severity::kError ? "error" : "warning";
}

bool HasErrors(const std::vector<Diagnostic>& diagnostics) {
  return std::any_of(diagnostics.begin(), diagnostics.end(), [](const Diagnostic& d) {
    return d.severity == Severity::kError;
  });
}

std::string FormatDiagnostic(const Diagnostic& diagnostic, std::string_view origin) {
  std::string location(origin);
  if (diagnostic.span.valid()) {
    absl::StrAppend(&location, ":", diagnostic.span.first_line);
    if (diagnostic.span.last_line != diagnostic.span.first_line) {
      absl::StrAppend(&location, "-", diagnostic.span.last_line);
    }
  }
  return absl::StrCat(location, ": ", std::string(SeverityName(diagnostic.severity)), ": ",
                      diagnostic.message, " [", diagnostic.code, "]");
}

}  // namespace fsmguard
