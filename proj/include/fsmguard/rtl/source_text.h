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

#ifndef FSMGUARD_RTL_SOURCE_TEXT_H_
#define FSMGUARD_RTL_SOURCE_TEXT_H_

#include <string>

namespace fsmguard {

// Inclusive, 1-based line range. A zero first_line means "no location".
struct Span {
  int first_line = 0;
  int last_line = 0;

  bool valid() const { return first_line > 0 && last_line >= first_line; }
  bool Contains(int line) const { return line >= first_line && line <= last_line; }
  Span Merge(const Span& other) const;

  friend bool operator==(const Span&, const Span&) = default;
};

struct SourceText {
  std::string content;
  // File path or corpus id, used in messages only.
  std::string origin;
};

// Number of lines in `content`; a trailing newline does not open a new line.
int LineCount(const std::string& content);

}  // namespace fsmguard

#endif  // FSMGUARD_RTL_SOURCE_TEXT_H_
