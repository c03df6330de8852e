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

#ifndef FSMGUARD_UTIL_SEEDS_H_
#define FSMGUARD_UTIL_SEEDS_H_

#include <cstddef>
#include <cstdint>
#include <random>

namespace fsmguard {

// Derives an independent per-record seed from a master seed, so that records
// produced in parallel do not depend on scheduling order.
uint64_t DeriveSeed(uint64_t master_seed, uint64_t index);

// Seeded uniform choice. Uses mt19937_64 (fully specified by the standard)
// with a modulo reduction so results are identical across standard libraries.
class SeededPicker {
 public:
  explicit SeededPicker(uint64_t seed) : engine_(seed) {}

  // Returns a value in [0, n). n must be positive.
  size_t Pick(size_t n);

 private:
  std::mt19937_64 engine_;
};

}  // namespace fsmguard

#endif  // FSMGUARD_UTIL_SEEDS_H_
