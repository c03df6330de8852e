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

#include "fsmguard/inject/vuln_class.h"

#include <algorithm>
#include <cctype>

namespace fsmguard {

const std::vector<VulnClass>& AllVulnClasses() {
  static const std::vector<VulnClass> kAll = {
      VulnClass::kCwe835Trap, VulnClass::kMissingDefault, VulnClass::kDuplicateEncoding,
      VulnClass::kUnreachableState, VulnClass::kStaticDeadlock};
  return kAll;
}

std::string VulnClassName(VulnClass vuln) {
  switch (vuln) {
    case VulnClass::kCwe835Trap:
      return "CWE835_TRAP";
    case VulnClass::kMissingDefault:
      return "MISSING_DEFAULT";
    case VulnClass::kDuplicateEncoding:
      return "DUPLICATE_ENCODING";
    case VulnClass::kUnreachableState:
      return "UNREACHABLE_STATE";
    case VulnClass::kStaticDeadlock:
      return "STATIC_DEADLOCK";
  }
  return "";
}

std::optional<VulnClass> ParseVulnClass(std::string_view name) {
  std::string normalized;
  for (char c : name) {
    normalized.push_back(c == '-' ? '_' : static_cast<char>(std::toupper(
                                              static_cast<unsigned char>(c))));
  }
  for (VulnClass vuln : AllVulnClasses()) {
    if (VulnClassName(vuln) == normalized) return vuln;
  }
  return std::nullopt;
}

RuleId MatchingRule(VulnClass vuln) {
  switch (vuln) {
    case VulnClass::kCwe835Trap:
      return RuleId::kTrapLoop;
    case VulnClass::kMissingDefault:
      return RuleId::kMissingDefault;
    case VulnClass::kDuplicateEncoding:
      return RuleId::kDuplicateEncoding;
    case VulnClass::kUnreachableState:
      return RuleId::kUnreachableState;
    case VulnClass::kStaticDeadlock:
      return RuleId::kStaticDeadlock;
  }
  return RuleId::kStaticDeadlock;
}

}  // namespace fsmguard
