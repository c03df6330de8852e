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

#ifndef FSMGUARD_CLI_CLI_H_
#define FSMGUARD_CLI_CLI_H_

#include <ostream>
#include <string>
#include <vector>

namespace fsmguard {

// Exit codes of the command line.
inline constexpr int kExitOk = 0;
// `check` found at least one violation.
inline constexpr int kExitViolations = 1;
// Bad usage, unreadable input, schema mismatch or any other failure.
inline constexpr int kExitError = 2;

// `args` includes the program name.
int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace fsmguard

#endif  // FSMGUARD_CLI_CLI_H_
