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

#ifndef FSMGUARD_INJECT_VULN_CLASS_H_
#define FSMGUARD_INJECT_VULN_CLASS_H_

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fsmguard/rules/violation.h"

namespace fsmguard {

enum class VulnClass {
  kCwe835Trap,
  kMissingDefault,
  kDuplicateEncoding,
  kUnreachableState,
  kStaticDeadlock,
};

const std::vector<VulnClass>& AllVulnClasses();
// "CWE835_TRAP", "MISSING_DEFAULT", ...
std::string VulnClassName(VulnClass vuln);
// Case-insensitive; accepts '-' for '_'.
std::optional<VulnClass> ParseVulnClass(std::string_view name);
// The checker rule that detects the class.
RuleId MatchingRule(VulnClass vuln);

}  // namespace fsmguard

#endif  // FSMGUARD_INJECT_VULN_CLASS_H_
