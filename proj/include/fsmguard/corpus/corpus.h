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

#ifndef FSMGUARD_CORPUS_CORPUS_H_
#define FSMGUARD_CORPUS_CORPUS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "absl/status/statusor.h"
#include "fsmguard/inject/injector.h"
#include "fsmguard/inject/vuln_class.h"
#include "fsmguard/report/json_codec.h"
#include "fsmguard/rtl/source_text.h"
#include "fsmguard/rules/rules.h"
#include "fsmguard/rules/violation.h"

namespace fsmguard {

struct BaseDesign {
  std::string id;
  SourceText source;
  std::vector<std::string> protected_names;
};

// One corpus entry. `vuln`, `plan` and `labels` are all empty for clean
// records and all set for injected ones.
struct CorpusRecord {
  static constexpr int kSchemaVersion = 1;

  std::string id;
  std::string base_id;
  std::string source;
  std::optional<VulnClass> vuln;
  std::optional<InjectionPlan> plan;
  std::vector<std::string> protected_names;
  uint64_t seed = 0;
  std::vector<RuleId> labels;

  bool clean() const { return !vuln.has_value(); }
};

struct CorpusOptions {
  uint64_t master_seed = 0;
  // Clean records per injected record.
  double clean_ratio = 1.0;
  int workers = 1;
  // Seeds tried on one base before moving to the next.
  int seed_attempts = 4;
  RuleConfig rules;
};

// Injected records are laid out class by class in `mix` order. Record k is
// seeded with DeriveSeed(master_seed, k) and starts at base k mod |bases|.
// A record is emitted only when the checker reports exactly the class's
// rule and verify_insertion passes; otherwise further seeds and then the
// following bases are tried. Clean records (the emitted base text) follow
// the injected ones at `clean_ratio`. The result does not depend on
// `workers`.
absl::StatusOr<std::vector<CorpusRecord>> GenerateCorpus(
    const std::vector<BaseDesign>& bases, const std::vector<std::pair<VulnClass, int>>& mix,
    const CorpusOptions& options);

OrderedJson InjectionPlanToJson(const InjectionPlan& plan);
absl::StatusOr<InjectionPlan> InjectionPlanFromJson(const nlohmann::json& value);

OrderedJson CorpusRecordToJson(const CorpusRecord& record);
absl::StatusOr<CorpusRecord> CorpusRecordFromJson(const nlohmann::json& value);

// One compact JSON object per line.
std::string CorpusToJsonl(const std::vector<CorpusRecord>& records);
absl::StatusOr<std::vector<CorpusRecord>> ParseCorpusJsonl(std::string_view text);

}  // namespace fsmguard

#endif  // FSMGUARD_CORPUS_CORPUS_H_
