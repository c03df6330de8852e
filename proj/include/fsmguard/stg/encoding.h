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

#ifndef FSMGUARD_STG_ENCODING_H_
#define FSMGUARD_STG_ENCODING_H_

#include <compare>
#include <cstdint>
#include <string>
#include <string_view>

#include "absl/status/statusor.h"

namespace fsmguard {

// A state code of fixed width. Bit index 0 is the most significant bit.
class Encoding {
 public:
  static constexpr int kMaxWidth = 63;

  Encoding() = default;
  // `value` is masked to `width` bits. Width must be in [1, kMaxWidth].
  Encoding(int width, uint64_t value);

  // Parses a string of '0'/'1' characters, MSB first.
  static absl::StatusOr<Encoding> FromBits(std::string_view bits);
  // Parses a sized binary literal such as 3'b010.
  static absl::StatusOr<Encoding> FromLiteral(std::string_view literal);

  int width() const { return width_; }
  uint64_t value() const { return value_; }
  bool bit(int index) const { return (value_ >> (width_ - 1 - index)) & 1U; }

  std::string ToBits() const;     // "010"
  std::string ToLiteral() const;  // "3'b010"

  friend bool operator==(const Encoding&, const Encoding&) = default;
  friend auto operator<=>(const Encoding&, const Encoding&) = default;

 private:
  int width_ = 1;
  uint64_t value_ = 0;
};

// Number of differing bit positions. Widths must match.
absl::StatusOr<int> HammingDistance(const Encoding& a, const Encoding& b);

}  // namespace fsmguard

#endif  // FSMGUARD_STG_ENCODING_H_
