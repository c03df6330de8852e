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

#ifndef FSMGUARD_UTIL_TEXT_H_
#define FSMGUARD_UTIL_TEXT_H_

#include <string>
#include <string_view>
#include <vector>

namespace fsmguard {

// Splits on '\n' and drops a trailing '\r' from each line. An empty input
// yields one empty line.
std::vector<std::string> SplitLines(std::string_view text);

// Copy of `text` without leading and trailing ASCII whitespace.
std::string TrimAscii(std::string_view text);

}  // namespace fsmguard

#endif  // FSMGUARD_UTIL_TEXT_H_
