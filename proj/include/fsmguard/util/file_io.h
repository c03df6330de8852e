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

#ifndef FSMGUARD_UTIL_FILE_IO_H_
#define FSMGUARD_UTIL_FILE_IO_H_

#include <string>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace fsmguard {

absl::StatusOr<std::string> ReadFile(const std::string& path);

// Writes through a sibling temporary file and renames it into place, so a
// reader never observes a partially written output.
absl::Status WriteFileAtomic(const std::string& path, std::string_view contents);

}  // namespace fsmguard

#endif  // FSMGUARD_UTIL_FILE_IO_H_
