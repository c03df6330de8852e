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

#include "fsmguard/stg/encoding.h"

#include <bit>
#include <cctype>

#include "absl/strings/str_cat.h"

namespace fsmguard {

Encoding::Encoding(int width, uint64_t value) : width_(width) {
  value_ = value & ((uint64_t{1} << width) - 1);
}

absl::StatusOr<Encoding> Encoding::FromBits(std::string_view bits) {
  std::string digits;
  for (char c : bits) {
    if (c == '_') continue;
    if (c != '0' && c != '1') {
      return absl::InvalidArgumentError(
          absl::StrCat("unsupported bit '", std::string(1, c), "' in encoding '", std::string(bits), "'"));
    }
    digits.push_back(c);
  }
  if (digits.empty() || digits.size() > static_cast<size_t>(kMaxWidth)) {
    return absl::InvalidArgumentError(absl::StrCat("bad encoding width in '", std::string(bits), "'"));
  }
  uint64_t value = 0;
  for (char c : digits) value = (value << 1) | static_cast<uint64_t>(c == '1');
  return Encoding(static_cast<int>(digits.size()), value);
}

absl::StatusOr<Encoding> Encoding::FromLiteral(std::string_view literal) {
  std::string compact;
  for (char c : literal) {
    if (!std::isspace(static_cast<unsigned char>(c))) compact.push_back(c);
  }
  size_t tick = compact.find('\'');
  if (tick == std::string::npos || tick == 0) {
    return absl::InvalidArgumentError(absl::StrCat("unsized state literal '", std::string(literal), "'"));
  }
  int width = 0;
  for (size_t i = 0; i < tick; ++i) {
    if (compact[i] == '_') continue;
    if (!std::isdigit(static_cast<unsigned char>(compact[i]))) {
      return absl::InvalidArgumentError(absl::StrCat("bad literal size in '", std::string(literal), "'"));
    }
    width = width * 10 + (compact[i] - '0');
    if (width > kMaxWidth) {
      return absl::InvalidArgumentError(absl::StrCat("literal too wide: '", std::string(literal), "'"));
    }
  }
  size_t base = tick + 1;
  if (base < compact.size() && (compact[base] == 's' || compact[base] == 'S')) ++base;
  if (base >= compact.size() || (compact[base] != 'b' && compact[base] != 'B')) {
    return absl::InvalidArgumentError(
        absl::StrCat("state literal '", std::string(literal), "' is not a binary literal"));
  }
  if (width < 1) {
    return absl::InvalidArgumentError(absl::StrCat("zero-width literal '", std::string(literal), "'"));
  }
  auto parsed = FromBits(std::string_view(compact).substr(base + 1));
  if (!parsed.ok()) return parsed.status();
  if (parsed->width() > width) {
    // Leading zeros beyond the declared size are harmless; anything else is
    // a truncation the designer probably did not intend.
    if ((parsed->value() >> width) != 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("literal '", std::string(literal), "' has more digits than its size"));
    }
  }
  return Encoding(width, parsed->value());
}

std::string Encoding::ToBits() const {
  std::string out;
  out.reserve(width_);
  for (int i = 0; i < width_; ++i) out.push_back(bit(i) ? '1' : '0');
  return out;
}

std::string Encoding::ToLiteral() const { return absl::StrCat(width_, "'b", ToBits()); }

absl::StatusOr<int> HammingDistance(const Encoding& a, const Encoding& b) {
  if (a.width() != b.width()) {
    return absl::InvalidArgumentError(absl::StrCat(
        "width mismatch: ", a.width(), " vs ", b.width()));
  }
  return std::popcount(a.value() ^ b.value());
}

}  // namespace fsmguard
