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

#include "fsmguard/report/metrics.h"

#include <openssl/evp.h>

#include <algorithm>
#include <map>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"

namespace fsmguard {
namespace {

struct Tally {
  int64_t inputs = 0;
  int64_t successes = 0;
};

MetricRow MakeRow(std::string cls, const Tally& tally) {
  return MetricRow{std::move(cls), tally.inputs, tally.successes,
                   RateHundredths(tally.successes, tally.inputs)};
}

OrderedJson RowToJson(const MetricRow& row) {
  OrderedJson out;
  out["class"] = row.cls;
  out["inputs"] = row.inputs;
  out["successes"] = row.successes;
  out["rate"] = row.rate();
  return out;
}

}  // namespace

std::string TaskName(Task task) {
  switch (task) {
    case Task::kInsertion:
      return "insertion";
    case Task::kDetection:
      return "detection";
    case Task::kMitigation:
      return "mitigation";
  }
  return "detection";
}

std::optional<Task> ParseTask(std::string_view name) {
  for (Task task : {Task::kInsertion, Task::kDetection, Task::kMitigation}) {
    if (TaskName(task) == name) return task;
  }
  return std::nullopt;
}

int64_t RateHundredths(int64_t successes, int64_t inputs) {
  // floor(10000 * s / n + 1/2)
  return (20000 * successes + inputs) / (2 * inputs);
}

std::string FormatRate(int64_t hundredths) {
  return absl::StrFormat("%d.%02d", hundredths / 100, hundredths % 100);
}

absl::StatusOr<ExperimentReport> ComputeMetrics(const std::vector<Outcome>& outcomes,
                                                const Provenance& provenance) {
  if (outcomes.empty()) return absl::InvalidArgumentError("empty experiment");
  ExperimentReport report;
  report.task = outcomes.front().task;
  report.provenance = provenance;
  std::vector<std::string> order;
  std::map<std::string, Tally> by_class;
  std::map<double, Tally> by_temperature;
  Tally total;
  for (const Outcome& o : outcomes) {
    if (o.task != report.task) {
      return absl::InvalidArgumentError(absl::StrCat("mixed tasks: ", TaskName(report.task),
                                                     " and ", TaskName(o.task)));
    }
    if (!by_class.count(o.cls)) order.push_back(o.cls);
    for (Tally* t : {&by_class[o.cls], &total}) {
      ++t->inputs;
      t->successes += o.success ? 1 : 0;
    }
    if (o.temperature) {
      Tally& t = by_temperature[*o.temperature];
      ++t.inputs;
      t.successes += o.success ? 1 : 0;
    }
  }
  for (const std::string& cls : order) report.rows.push_back(MakeRow(cls, by_class[cls]));
  report.total = MakeRow("TOTAL", total);
  if (by_temperature.size() > 1) {
    report.sweep.emplace();
    for (const auto& [temperature, t] : by_temperature) {
      report.sweep->push_back(SweepPoint{temperature, t.inputs, t.successes,
                                         RateHundredths(t.successes, t.inputs)});
    }
  }
  return report;
}

OrderedJson ExperimentReportToJsonValue(const ExperimentReport& report) {
  OrderedJson out;
  out["schema_version"] = ExperimentReport::kSchemaVersion;
  out["task"] = TaskName(report.task);
  out["rows"] = OrderedJson::array();
  for (const MetricRow& row : report.rows) out["rows"].push_back(RowToJson(row));
  out["total"] = RowToJson(report.total);
  if (report.sweep) {
    out["sweep"] = OrderedJson::array();
    for (const SweepPoint& p : *report.sweep) {
      OrderedJson point;
      point["temperature"] = p.temperature;
      point["inputs"] = p.inputs;
      point["successes"] = p.successes;
      point["rate"] = static_cast<double>(p.rate_hundredths) / 100.0;
      out["sweep"].push_back(point);
    }
  } else {
    out["sweep"] = nullptr;
  }
  OrderedJson prov;
  prov["config_hash"] = report.provenance.config_hash;
  prov["seeds"] = report.provenance.seeds;
  prov["provider"] = report.provenance.provider;
  out["provenance"] = prov;
  return out;
}

std::string ExperimentReportToJson(const ExperimentReport& report) {
  return ExperimentReportToJsonValue(report).dump(2) + "\n";
}

std::string FormatExperimentReportText(const ExperimentReport& report) {
  size_t width = 5;
  for (const MetricRow& row : report.rows) width = std::max(width, row.cls.size());
  std::string out = absl::StrFormat("task: %s\n%-*s %8s %10s %9s\n", TaskName(report.task),
                                    width, "class", "inputs", "successes", "rate (%)");
  auto line = [&](const MetricRow& row) {
    absl::StrAppendFormat(&out, "%-*s %8d %10d %9s\n", width, row.cls, row.inputs,
                          row.successes, FormatRate(row.rate_hundredths));
  };
  for (const MetricRow& row : report.rows) line(row);
  line(report.total);
  if (report.sweep) {
    absl::StrAppend(&out, "sweep:\n");
    for (const SweepPoint& p : *report.sweep) {
      absl::StrAppendFormat(&out, "  temperature %.2f: %d/%d = %s\n", p.temperature,
                            p.successes, p.inputs, FormatRate(p.rate_hundredths));
    }
  }
  absl::StrAppendFormat(&out, "provider: %s, config: %s\n", report.provenance.provider,
                        report.provenance.config_hash);
  return out;
}

std::string ConfigHash(std::string_view config_text) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_Digest(config_text.data(), config_text.size(), digest, &length, EVP_sha256(), nullptr);
  std::string out = "sha256:";
  for (unsigned int i = 0; i < length; ++i) absl::StrAppendFormat(&out, "%02x", digest[i]);
  return out;
}

}  // namespace fsmguard
