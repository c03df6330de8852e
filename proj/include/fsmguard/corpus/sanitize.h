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

#ifndef FSMGUARD_CORPUS_SANITIZE_H_
#define FSMGUARD_CORPUS_SANITIZE_H_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "fsmguard/report/json_codec.h"
#include "fsmguard/rtl/ast.h"
#include "fsmguard/rtl/source_text.h"

namespace fsmguard {

struct SanitizeOptions {
  // Matched case-insensitively as substrings.
  std::vector<std::string> keywords = {"trojan", "trigger", "malicious", "backdoor"};
  uint64_t seed = 0;
};

struct SanitizeResult {
  FsmAst ast;
  SourceText text;
  // Original identifier -> neutral name.
  std::map<std::string, std::string> rename;
};

// Renames every declared identifier containing a keyword: the module to
// u<k>, states to st<k>, other signals to sig<k>. The seed shuffles the
// numbering. A name already in use gets a _1, _2, ... suffix. In comments,
// renamed identifiers are substituted and other words containing a keyword
// are dropped; a comment left empty is removed.
absl::StatusOr<SanitizeResult> SanitizeIdentifiers(const FsmAst& ast,
                                                   const SanitizeOptions& options = {});

absl::StatusOr<SanitizeResult> SanitizeSource(const SourceText& source,
                                              const SanitizeOptions& options = {});

// {"schema_version": 1, "rename": {original: neutral, ...}}
OrderedJson RenameMapToJson(const std::map<std::string, std::string>& rename);

// True when `text` contains a keyword, ignoring case.
bool ContainsKeyword(std::string_view text, const std::vector<std::string>& keywords);

}  // namespace fsmguard

#endif  // FSMGUARD_CORPUS_SANITIZE_H_
