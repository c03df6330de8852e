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

#include "fsmguard/corpus/corpus.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "fsmguard/corpus/fidelity.h"
#include "fsmguard/rtl/emitter.h"
#include "fsmguard/rtl/parser.h"
#include "fsmguard/rules/check_report.h"
#include "fsmguard/util/seeds.h"
#include "fsmguard/util/text.h"

namespace fsmguard {
namespace {

struct PreparedBase {
  const BaseDesign* design;
  FsmAst ast;
  SourceText emitted;
};

absl::StatusOr<std::vector<PreparedBase>> PrepareBases(const std::vector<BaseDesign>& bases,
                                                       const RuleConfig& rules) {
  std::vector<PreparedBase> out;
  for (const BaseDesign& base : bases) {
    ParseResult parsed = ParseSource(base.source);
    if (!parsed.ok()) {
      return absl::InvalidArgumentError(absl::StrCat("base ", base.id, " does not parse"));
    }
    CheckReport report = CheckAst(*parsed.ast, base.protected_names, rules, base.id);
    if (!report.stg) {
      return absl::InvalidArgumentError(absl::StrCat("base ", base.id, " has no usable graph"));
    }
    if (report.HasViolations()) {
      std::vector<std::string> names;
      for (RuleId rule : report.ViolatedRules()) names.push_back(RuleIdName(rule));
      return absl::InvalidArgumentError(absl::StrCat("base ", base.id, " is not clean: ",
                                                     absl::StrJoin(names, ", ")));
    }
    out.push_back(PreparedBase{&base, *parsed.ast, EmitVerilog(*parsed.ast, base.id)});
  }
  return out;
}

// Tries seeds and bases in a fixed order until one injection passes the gate.
absl::StatusOr<CorpusRecord> InjectOne(const std::vector<PreparedBase>& bases, VulnClass vuln,
                                       uint64_t index, const CorpusOptions& options) {
  const uint64_t record_seed = DeriveSeed(options.master_seed, index);
  const RuleId rule = MatchingRule(vuln);
  for (size_t offset = 0; offset < bases.size(); ++offset) {
    const PreparedBase& base = bases[(index + offset) % bases.size()];
    for (int attempt = 0; attempt < options.seed_attempts; ++attempt) {
      uint64_t seed = attempt == 0 ? record_seed : DeriveSeed(record_seed, attempt);
      absl::StatusOr<InjectionResult> injected = PlanInjection(vuln, base.ast, seed);
      if (!injected.ok()) {
        // Deterministic preconditions fail the same way for every seed.
        if (injected.status().code() == absl::StatusCode::kFailedPrecondition) break;
        continue;
      }
      CheckReport report = RunAllChecks(injected->text, base.design->protected_names,
                                        options.rules);
      if (report.ViolatedRules() != std::vector<RuleId>{rule}) continue;
      FidelityVerdict verdict = VerifyInsertion(base.emitted, injected->text, vuln,
                                                base.design->protected_names, options.rules);
      if (!verdict.overall) continue;
      CorpusRecord record;
      record.base_id = base.design->id;
      record.source = injected->text.content;
      record.vuln = vuln;
      record.plan = injected->plan;
      record.protected_names = base.design->protected_names;
      record.seed = seed;
      record.labels = {rule};
      return record;
    }
  }
  return absl::FailedPreconditionError(
      absl::StrCat("unsatisfiable mix: no base design admits ", VulnClassName(vuln)));
}

absl::Status Malformed(std::string_view what) {
  return absl::InvalidArgumentError(absl::StrCat("malformed corpus record: ", std::string(what)));
}

OrderedJson SpansToJson(const std::vector<Span>& spans) {
  OrderedJson out = OrderedJson::array();
  for (const Span& span : spans) out.push_back(SpanToJson(span));
  return out;
}

std::vector<Span> SpansFromJson(const nlohmann::json& value) {
  std::vector<Span> out;
  for (const nlohmann::json& item : value) {
    out.push_back(Span{item.at("first_line").get<int>(), item.at("last_line").get<int>()});
  }
  return out;
}

}  // namespace

absl::StatusOr<std::vector<CorpusRecord>> GenerateCorpus(
    const std::vector<BaseDesign>& bases, const std::vector<std::pair<VulnClass, int>>& mix,
    const CorpusOptions& options) {
  if (options.workers < 1) return absl::InvalidArgumentError("workers must be at least 1");
  if (!(options.clean_ratio >= 0) || !std::isfinite(options.clean_ratio)) {
    return absl::InvalidArgumentError("clean ratio must be a non-negative number");
  }
  if (options.seed_attempts < 1) {
    return absl::InvalidArgumentError("seed attempts must be at least 1");
  }
  std::vector<VulnClass> slots;
  for (const auto& [vuln, count] : mix) {
    if (count < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("negative count for ", VulnClassName(vuln)));
    }
    slots.insert(slots.end(), static_cast<size_t>(count), vuln);
  }
  if (slots.empty()) return std::vector<CorpusRecord>{};
  if (bases.empty()) return absl::InvalidArgumentError("no base designs");
  absl::StatusOr<std::vector<PreparedBase>> prepared = PrepareBases(bases, options.rules);
  if (!prepared.ok()) return prepared.status();

  std::vector<absl::StatusOr<CorpusRecord>> injected(slots.size(),
                                                     absl::UnknownError("not generated"));
  std::atomic<size_t> next{0};
  auto work = [&] {
    for (size_t k = next++; k < slots.size(); k = next++) {
      injected[k] = InjectOne(*prepared, slots[k], k, options);
    }
  };
  size_t workers = std::min(static_cast<size_t>(options.workers), slots.size());
  std::vector<std::thread> pool;
  for (size_t i = 1; i < workers; ++i) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();

  std::vector<CorpusRecord> out;
  size_t clean_emitted = 0;
  for (size_t k = 0; k < slots.size(); ++k) {
    if (!injected[k].ok()) return injected[k].status();
    out.push_back(*std::move(injected[k]));
    size_t clean_due = static_cast<size_t>(
        std::floor(static_cast<double>(k + 1) * options.clean_ratio + 1e-9));
    for (; clean_emitted < clean_due; ++clean_emitted) {
      const PreparedBase& base = (*prepared)[clean_emitted % prepared->size()];
      CorpusRecord record;
      record.base_id = base.design->id;
      record.source = base.emitted.content;
      record.protected_names = base.design->protected_names;
      out.push_back(std::move(record));
    }
  }
  for (size_t i = 0; i < out.size(); ++i) out[i].id = absl::StrFormat("rec-%06d", i);
  return out;
}

OrderedJson InjectionPlanToJson(const InjectionPlan& plan) {
  OrderedJson out;
  out["vuln"] = VulnClassName(plan.vuln);
  out["seed"] = plan.seed;
  out["target_state"] = plan.target_state;
  out["added_states"] = plan.added_states;
  out["modified_spans"] = SpansToJson(plan.modified_spans);
  out["removed_spans"] = SpansToJson(plan.removed_spans);
  out["notes"] = plan.notes;
  return out;
}

absl::StatusOr<InjectionPlan> InjectionPlanFromJson(const nlohmann::json& value) {
  try {
    InjectionPlan plan;
    std::optional<VulnClass> vuln = ParseVulnClass(value.at("vuln").get<std::string>());
    if (!vuln) return Malformed("unknown vulnerability class");
    plan.vuln = *vuln;
    plan.seed = value.at("seed").get<uint64_t>();
    plan.target_state = value.at("target_state").get<std::string>();
    plan.added_states = value.at("added_states").get<std::vector<std::string>>();
    plan.modified_spans = SpansFromJson(value.at("modified_spans"));
    plan.removed_spans = SpansFromJson(value.at("removed_spans"));
    plan.notes = value.value("notes", "");
    return plan;
  } catch (const nlohmann::json::exception& e) {
    return Malformed(e.what());
  }
}

OrderedJson CorpusRecordToJson(const CorpusRecord& record) {
  OrderedJson out;
  out["schema_version"] = CorpusRecord::kSchemaVersion;
  out["id"] = record.id;
  out["base_id"] = record.base_id;
  out["vuln"] = record.vuln ? OrderedJson(VulnClassName(*record.vuln)) : OrderedJson(nullptr);
  out["seed"] = record.seed;
  out["protected"] = record.protected_names;
  OrderedJson labels = OrderedJson::array();
  for (RuleId rule : record.labels) labels.push_back(RuleIdName(rule));
  out["labels"] = labels;
  out["plan"] = record.plan ? InjectionPlanToJson(*record.plan) : OrderedJson(nullptr);
  out["source"] = record.source;
  return out;
}

absl::StatusOr<CorpusRecord> CorpusRecordFromJson(const nlohmann::json& value) {
  try {
    if (value.at("schema_version").get<int>() != CorpusRecord::kSchemaVersion) {
      return absl::InvalidArgumentError(
          absl::StrCat("unsupported corpus schema_version ", value.at("schema_version").dump()));
    }
    CorpusRecord record;
    record.id = value.at("id").get<std::string>();
    record.base_id = value.at("base_id").get<std::string>();
    record.source = value.at("source").get<std::string>();
    record.seed = value.at("seed").get<uint64_t>();
    record.protected_names = value.at("protected").get<std::vector<std::string>>();
    const nlohmann::json& vuln = value.at("vuln");
    if (!vuln.is_null()) {
      record.vuln = ParseVulnClass(vuln.get<std::string>());
      if (!record.vuln) return Malformed("unknown vulnerability class");
    }
    for (const std::string& name : value.at("labels").get<std::vector<std::string>>()) {
      std::optional<RuleId> rule = ParseRuleId(name);
      if (!rule) return Malformed(absl::StrCat("unknown rule ", name));
      record.labels.push_back(*rule);
    }
    const nlohmann::json& plan = value.at("plan");
    if (!plan.is_null()) {
      absl::StatusOr<InjectionPlan> parsed = InjectionPlanFromJson(plan);
      if (!parsed.ok()) return parsed.status();
      record.plan = *std::move(parsed);
    }
    if (record.vuln.has_value() != record.plan.has_value() ||
        record.vuln.has_value() == record.labels.empty()) {
      return Malformed(absl::StrCat(record.id, ": vuln, plan and labels disagree"));
    }
    return record;
  } catch (const nlohmann::json::exception& e) {
    return Malformed(e.what());
  }
}

std::string CorpusToJsonl(const std::vector<CorpusRecord>& records) {
  std::string out;
  for (const CorpusRecord& record : records) {
    out += CorpusRecordToJson(record).dump();
    out.push_back('\n');
  }
  return out;
}

absl::StatusOr<std::vector<CorpusRecord>> ParseCorpusJsonl(std::string_view text) {
  std::vector<CorpusRecord> out;
  int line_no = 0;
  for (const std::string& line : SplitLines(text)) {
    ++line_no;
    if (TrimAscii(line).empty()) continue;
    nlohmann::json value = nlohmann::json::parse(line, nullptr, /*allow_exceptions=*/false);
    if (value.is_discarded()) {
      return absl::InvalidArgumentError(absl::StrCat("corpus line ", line_no, ": invalid JSON"));
    }
    absl::StatusOr<CorpusRecord> record = CorpusRecordFromJson(value);
    if (!record.ok()) {
      return absl::InvalidArgumentError(
          absl::StrCat("corpus line ", line_no, ": ", record.status().message()));
    }
    out.push_back(*std::move(record));
  }
  return out;
}

}  // namespace fsmguard
