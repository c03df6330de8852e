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

#ifndef FSMGUARD_REPORT_METRICS_H_
#define FSMGUARD_REPORT_METRICS_H_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"
#include "fsmguard/report/json_codec.h"

namespace fsmguard {

enum class Task { kInsertion, kDetection, kMitigation };

std::string TaskName(Task task);
std::optional<Task> ParseTask(std::string_view name);

// One scored attempt.
struct Outcome {
  Task task = Task::kDetection;
  // Row key, e.g. "STATIC_DEADLOCK" or "CLEAN".
  std::string cls;
  std::string design_id;
  bool success = false;
  std::optional<double> temperature;
};

// Percent in hundredths: 100 * successes / inputs rounded half up to two
// decimals, in integer arithmetic. inputs must be positive.
int64_t RateHundredths(int64_t successes, int64_t inputs);
// "94.08"
std::string FormatRate(int64_t hundredths);

struct MetricRow {
  std::string cls;
  int64_t inputs = 0;
  int64_t successes = 0;
  int64_t rate_hundredths = 0;

  double rate() const { return static_cast<double>(rate_hundredths) / 100.0; }
};

struct SweepPoint {
  double temperature = 0;
  int64_t inputs = 0;
  int64_t successes = 0;
  int64_t rate_hundredths = 0;
};

struct Provenance {
  // "sha256:<hex>" of the configuration in effect, or "none".
  std::string config_hash = "none";
  std::vector<uint64_t> seeds;
  // Provider id, or "static-oracle" when no model was involved.
  std::string provider = "static-oracle";
};

struct ExperimentReport {
  static constexpr int kSchemaVersion = 1;

  Task task = Task::kDetection;
  // Classes in order of first appearance.
  std::vector<MetricRow> rows;
  MetricRow total;
  // Present when outcomes carry more than one distinct temperature; sorted
  // by temperature.
  std::optional<std::vector<SweepPoint>> sweep;
  Provenance provenance;
};

// Fails with "empty experiment" on no outcomes and with InvalidArgument when
// tasks are mixed.
absl::StatusOr<ExperimentReport> ComputeMetrics(const std::vector<Outcome>& outcomes,
                                                const Provenance& provenance = {});

OrderedJson ExperimentReportToJsonValue(const ExperimentReport& report);
// dump(2) plus a trailing newline.
std::string ExperimentReportToJson(const ExperimentReport& report);
// Aligned table: class, inputs, successes, rate.
std::string FormatExperimentReportText(const ExperimentReport& report);

std::string ConfigHash(std::string_view config_text);

}  // namespace fsmguard

#endif  // FSMGUARD_REPORT_METRICS_H_
