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

#include "fsmguard/cli/cli.h"

#include <algorithm>
#include <filesystem>
#include <map>
#include <memory>
#include <optional>
#include <set>

#include "CLI11.hpp"
#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/ascii.h"
#include "absl/strings/numbers.h"
#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "fsmguard/corpus/corpus.h"
#include "fsmguard/corpus/sanitize.h"
#include "fsmguard/inject/injector.h"
#include "fsmguard/llm/library.h"
#include "fsmguard/llm/pipeline.h"
#include "fsmguard/llm/provider.h"
#include "fsmguard/llm/sweep.h"
#include "fsmguard/llm/transcript.h"
#include "fsmguard/mitigate/mitigation.h"
#include "fsmguard/report/json_codec.h"
#include "fsmguard/report/metrics.h"
#include "fsmguard/report/scoring.h"
#include "fsmguard/rtl/parser.h"
#include "fsmguard/rules/check_report.h"
#include "fsmguard/stg/extract.h"
#include "fsmguard/stg/stg.h"
#include "fsmguard/util/file_io.h"

namespace fsmguard {
namespace {

namespace fs = std::filesystem;

// Settings read from --config.
struct Config {
  RuleConfig rules;
  CorpusOptions corpus;
  std::optional<ProviderConfig> provider;
  std::vector<std::string> keywords = SanitizeOptions().keywords;
  std::string hash = "none";
};

absl::StatusOr<Config> LoadConfig(const std::string& path) {
  Config config;
  if (path.empty()) return config;
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  nlohmann::json value = nlohmann::json::parse(*text, nullptr, false);
  if (value.is_discarded() || !value.is_object()) {
    return absl::InvalidArgumentError(absl::StrCat(path, ": not a JSON object"));
  }
  static const std::set<std::string> kKeys = {"schema_version", "rules", "corpus", "provider",
                                              "sanitize"};
  for (const auto& [key, unused] : value.items()) {
    if (!kKeys.count(key)) {
      return absl::InvalidArgumentError(absl::StrCat(path, ": unknown key '", key, "'"));
    }
  }
  if (value.value("schema_version", 1) != 1) {
    return absl::InvalidArgumentError(absl::StrCat(path, ": unsupported schema_version"));
  }
  try {
    if (value.contains("rules")) {
      absl::StatusOr<RuleConfig> rules = RuleConfigFromJson(value["rules"]);
      if (!rules.ok()) return rules.status();
      config.rules = *rules;
    }
    if (value.contains("corpus")) {
      const nlohmann::json& c = value["corpus"];
      config.corpus.clean_ratio = c.value("clean_ratio", config.corpus.clean_ratio);
      config.corpus.workers = c.value("workers", config.corpus.workers);
      config.corpus.seed_attempts = c.value("seed_attempts", config.corpus.seed_attempts);
    }
    if (value.contains("provider")) {
      absl::StatusOr<ProviderConfig> provider = ProviderConfigFromJson(value["provider"]);
      if (!provider.ok()) return provider.status();
      config.provider = *provider;
    }
    if (value.contains("sanitize")) {
      config.keywords = value["sanitize"].value("keywords", config.keywords);
    }
  } catch (const nlohmann::json::exception& e) {
    return absl::InvalidArgumentError(absl::StrCat(path, ": ", e.what()));
  }
  config.hash = ConfigHash(*text);
  return config;
}

absl::StatusOr<SourceText> ReadDesign(const std::string& path) {
  absl::StatusOr<std::string> text = ReadFile(path);
  if (!text.ok()) return text.status();
  return SourceText{*std::move(text), path};
}

absl::StatusOr<FsmAst> ParseDesign(const SourceText& source) {
  ParseResult parsed = ParseSource(source);
  if (!parsed.ok()) {
    std::vector<std::string> lines;
    for (const Diagnostic& d : parsed.diagnostics) {
      if (d.severity == Severity::kError) lines.push_back(FormatDiagnostic(d, source.origin));
    }
    return absl::InvalidArgumentError(absl::StrJoin(lines, "\n"));
  }
  return *std::move(parsed.ast);
}

absl::Status Emit(const std::string& path, std::string_view content, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << content;
    return absl::OkStatus();
  }
  fs::path parent = fs::path(path).parent_path();
  if (!parent.empty()) {
    std::error_code ec;
    fs::create_directories(parent, ec);
  }
  return WriteFileAtomic(path, content);
}

absl::StatusOr<std::vector<RuleId>> ParseRules(const std::vector<std::string>& names) {
  std::vector<RuleId> out;
  for (const std::string& name : names) {
    std::optional<RuleId> rule = ParseRuleId(name);
    if (!rule) return absl::InvalidArgumentError(absl::StrCat("unknown rule ", name));
    out.push_back(*rule);
  }
  return out;
}

absl::StatusOr<std::map<std::string, std::string>> ParsePairs(
    const std::vector<std::string>& items, std::string_view what) {
  std::map<std::string, std::string> out;
  for (const std::string& item : items) {
    size_t eq = item.find('=');
    if (eq == std::string::npos || eq == 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("expected KEY=VALUE for ", std::string(what), ", got '", item, "'"));
    }
    out[item.substr(0, eq)] = item.substr(eq + 1);
  }
  return out;
}

std::string SafeName(const std::string& id) {
  std::string out = id;
  for (char& c : out) {
    if (!absl::ascii_isalnum(static_cast<unsigned char>(c)) && c != '-' && c != '_' &&
        c != '.') {
      c = '_';
    }
  }
  return out;
}

// ---- check ----

struct CheckArgs {
  std::string design;
  std::vector<std::string> protected_names;
  std::vector<std::string> disable;
  bool self_edges = false;
  std::string format = "text";
  std::string output;
};

absl::StatusOr<int> RunCheck(const CheckArgs& args, const Config& config, std::ostream& out,
                             std::ostream& err) {
  absl::StatusOr<SourceText> source = ReadDesign(args.design);
  if (!source.ok()) return source.status();
  RuleConfig rules = config.rules;
  absl::StatusOr<std::vector<RuleId>> disabled = ParseRules(args.disable);
  if (!disabled.ok()) return disabled.status();
  rules.disabled.insert(disabled->begin(), disabled->end());
  if (args.self_edges) rules.include_self_edges = true;
  CheckReport report = RunAllChecks(*source, args.protected_names, rules);
  std::string text =
      args.format == "json" ? CheckReportToJson(report) : FormatCheckReportText(report);
  absl::Status written = Emit(args.output, text, out);
  if (!written.ok()) return written;
  if (!report.parsed || !report.stg) {
    err << "fsmguard: " << args.design << ": design could not be analyzed\n";
    return kExitError;
  }
  return report.HasViolations() ? kExitViolations : kExitOk;
}

// ---- inject ----

struct InjectArgs {
  std::string design;
  std::string vuln;
  uint64_t seed = 0;
  std::string target;
  std::string source_state;
  std::string output;
  std::string plan;
};

absl::StatusOr<int> RunInject(const InjectArgs& args, std::ostream& out) {
  absl::StatusOr<SourceText> source = ReadDesign(args.design);
  if (!source.ok()) return source.status();
  absl::StatusOr<FsmAst> ast = ParseDesign(*source);
  if (!ast.ok()) return ast.status();
  InjectOptions options;
  if (!args.target.empty()) options.target_state = args.target;
  if (!args.source_state.empty()) options.source_state = args.source_state;
  absl::StatusOr<InjectionResult> result = PlanInjection(args.vuln, *ast, args.seed, options);
  if (!result.ok()) return result.status();
  std::string output = args.output;
  if (output.empty()) {
    output = absl::StrCat(fs::path(args.design).stem().string(), ".",
                          absl::AsciiStrToLower(VulnClassName(result->plan.vuln)), ".",
                          args.seed, ".v");
  }
  std::string plan = args.plan.empty() ? output + ".plan.json" : args.plan;
  absl::Status s = Emit(output, result->text.content, out);
  if (!s.ok()) return s;
  s = Emit(plan, InjectionPlanToJson(result->plan).dump(2) + "\n", out);
  if (!s.ok()) return s;
  out << "wrote " << output << " and " << plan << "\n";
  return kExitOk;
}

// ---- mitigate ----

struct MitigateArgs {
  std::string design;
  std::vector<std::string> protected_names;
  std::string exit_input;
  std::string fallback;
  std::string output;
  std::string report;
};

absl::StatusOr<int> RunMitigate(const MitigateArgs& args, const Config& config,
                                std::ostream& out) {
  absl::StatusOr<SourceText> source = ReadDesign(args.design);
  if (!source.ok()) return source.status();
  absl::StatusOr<FsmAst> ast = ParseDesign(*source);
  if (!ast.ok()) return ast.status();
  CheckReport report = RunAllChecks(*source, args.protected_names, config.rules);
  MitigationConfig mc;
  mc.protected_names = args.protected_names;
  mc.rules = config.rules;
  mc.exit_input = args.exit_input;
  mc.fallback_state = args.fallback;
  MitigationOutcome outcome = Mitigate(*source, report, mc);
  if (!args.output.empty()) {
    absl::Status s = Emit(args.output, outcome.design.content, out);
    if (!s.ok()) return s;
  }
  absl::Status s = Emit(args.report, MitigationOutcomeToJson(outcome), out);
  if (!s.ok()) return s;
  return kExitOk;
}

// ---- gen-corpus ----

struct CorpusArgs {
  std::vector<std::string> bases;
  std::vector<std::string> mix;
  std::vector<std::string> protected_names;
  uint64_t seed = 0;
  std::optional<double> clean_ratio;
  std::optional<int> workers;
  std::string output;
};

absl::StatusOr<int> RunGenCorpus(const CorpusArgs& args, const Config& config,
                                 std::ostream& out) {
  std::vector<BaseDesign> bases;
  std::set<std::string> ids;
  for (const std::string& path : args.bases) {
    absl::StatusOr<SourceText> source = ReadDesign(path);
    if (!source.ok()) return source.status();
    std::string id = fs::path(path).stem().string();
    if (!ids.insert(id).second) {
      return absl::InvalidArgumentError(absl::StrCat("duplicate base id ", id));
    }
    bases.push_back(BaseDesign{id, *source, args.protected_names});
  }
  absl::StatusOr<std::map<std::string, std::string>> pairs = ParsePairs(args.mix, "--mix");
  if (!pairs.ok()) return pairs.status();
  std::vector<std::pair<VulnClass, int>> mix;
  for (const std::string& item : args.mix) {
    std::string name = item.substr(0, item.find('='));
    std::optional<VulnClass> vuln = ParseVulnClass(name);
    if (!vuln) return absl::InvalidArgumentError(absl::StrCat("unknown class ", name));
    int count = 0;
    if (!absl::SimpleAtoi(pairs->at(name), &count)) {
      return absl::InvalidArgumentError(absl::StrCat("bad count in '", item, "'"));
    }
    mix.push_back({*vuln, count});
  }
  CorpusOptions options = config.corpus;
  options.master_seed = args.seed;
  options.rules = config.rules;
  if (args.clean_ratio) options.clean_ratio = *args.clean_ratio;
  if (args.workers) options.workers = *args.workers;
  absl::StatusOr<std::vector<CorpusRecord>> corpus = GenerateCorpus(bases, mix, options);
  if (!corpus.ok()) return corpus.status();
  absl::Status s = Emit(args.output, CorpusToJsonl(*corpus), out);
  if (!s.ok()) return s;
  size_t injected = std::count_if(corpus->begin(), corpus->end(),
                                  [](const CorpusRecord& r) { return !r.clean(); });
  if (!args.output.empty() && args.output != "-") {
    out << "wrote " << corpus->size() << " records (" << injected << " injected) to "
        << args.output << "\n";
  }
  return kExitOk;
}

// ---- run-pipeline / sweep ----

struct PipelineArgs {
  std::string pipeline;
  std::vector<std::string> literals;
  std::string corpus;
  std::vector<std::string> designs;
  std::string out_dir;
  std::string mock_script;
  std::optional<double> temperature;
  std::optional<double> top_p;
  int steps = 10;
  uint64_t jitter_seed = 0;
};

struct DesignInput {
  SourceText text;
  std::vector<std::string> protected_names;
};

absl::StatusOr<std::vector<DesignInput>> LoadInputs(const PipelineArgs& args) {
  std::vector<DesignInput> out;
  if (!args.corpus.empty()) {
    absl::StatusOr<std::string> text = ReadFile(args.corpus);
    if (!text.ok()) return text.status();
    absl::StatusOr<std::vector<CorpusRecord>> records = ParseCorpusJsonl(*text);
    if (!records.ok()) return records.status();
    for (CorpusRecord& r : *records) {
      out.push_back(DesignInput{SourceText{std::move(r.source), r.id}, r.protected_names});
    }
  }
  for (const std::string& path : args.designs) {
    absl::StatusOr<SourceText> source = ReadDesign(path);
    if (!source.ok()) return source.status();
    out.push_back(DesignInput{*std::move(source), {}});
  }
  if (out.empty()) return absl::InvalidArgumentError("no designs given (use --corpus or files)");
  return out;
}

absl::StatusOr<ProviderFactory> Factory(const PipelineArgs& args, const Config& config) {
  ProviderConfig provider = config.provider.value_or(ProviderConfig{});
  if (!args.mock_script.empty()) {
    provider.kind = "mock";
    provider.mock_script = args.mock_script;
  }
  return MakeProviderFactory(provider);
}

bool NeedsPerDesignSpec(const std::string& pipeline,
                        const std::map<std::string, std::string>& literals) {
  if (pipeline == "fif") return !literals.count("protected_state");
  if (pipeline == "hd_mitigation") {
    return !literals.count("protected_state") || !literals.count("assessment");
  }
  return false;
}

absl::StatusOr<PipelineSpec> BuildSpec(const PipelineArgs& args,
                                       std::map<std::string, std::string> literals,
                                       const DesignInput* design, const RuleConfig& rules) {
  absl::StatusOr<PipelineSpec> spec;
  if (fs::path(args.pipeline).extension() == ".json") {
    absl::StatusOr<std::string> text = ReadFile(args.pipeline);
    if (!text.ok()) return text.status();
    nlohmann::json value = nlohmann::json::parse(*text, nullptr, false);
    if (value.is_discarded()) {
      return absl::InvalidArgumentError(absl::StrCat(args.pipeline, ": invalid JSON"));
    }
    spec = PipelineSpecFromJson(value);
    if (!spec.ok()) return spec.status();
    for (PipelineStep& step : spec->steps) {
      for (const auto& [k, v] : literals) step.literals[k] = v;
    }
  } else {
    if (design != nullptr && NeedsPerDesignSpec(args.pipeline, literals)) {
      if (design->protected_names.empty() && !literals.count("protected_state")) {
        return absl::InvalidArgumentError(absl::StrCat(
            design->text.origin, ": no protected state (pass --literal protected_state=NAME)"));
      }
      if (!literals.count("protected_state")) {
        literals["protected_state"] = design->protected_names.front();
      }
      if (args.pipeline == "hd_mitigation" && !literals.count("assessment")) {
        literals["assessment"] = MitigationAssessment(
            RunAllChecks(design->text, {literals["protected_state"]}, rules));
      }
    }
    spec = LibraryPipeline(args.pipeline, literals);
    if (!spec.ok()) return spec.status();
  }
  if (args.temperature || args.top_p) {
    GenerationParams base = spec->steps.empty() ? GenerationParams() : spec->steps[0].params;
    absl::StatusOr<GenerationParams> params = GenerationParams::Create(
        args.temperature.value_or(base.temperature()), args.top_p.value_or(base.top_p()),
        base.presence_penalty(), base.frequency_penalty(), base.max_tokens());
    if (!params.ok()) return params.status();
    *spec = WithParams(*spec, *params);
  }
  return spec;
}

absl::Status WriteTranscript(const std::string& dir, const std::string& name,
                             const Transcript& transcript) {
  return WriteFileAtomic((fs::path(dir) / (name + ".json")).string(),
                         TranscriptToJson(transcript));
}

absl::StatusOr<int> RunPipelines(const PipelineArgs& args, const Config& config, bool sweep,
                                 std::ostream& out) {
  if (args.out_dir.empty()) return absl::InvalidArgumentError("--out-dir is required");
  absl::StatusOr<std::map<std::string, std::string>> literals =
      ParsePairs(args.literals, "--literal");
  if (!literals.ok()) return literals.status();
  absl::StatusOr<std::vector<DesignInput>> inputs = LoadInputs(args);
  if (!inputs.ok()) return inputs.status();
  absl::StatusOr<ProviderFactory> factory = Factory(args, config);
  if (!factory.ok()) return factory.status();
  SweepOptions options;
  options.max_in_flight = config.provider ? config.provider->max_in_flight : 4;
  options.run.jitter_seed = args.jitter_seed;
  std::error_code ec;
  fs::create_directories(args.out_dir, ec);
  if (ec) return absl::InternalError(absl::StrCat(args.out_dir, ": ", ec.message()));

  // Groups of designs sharing one spec.
  std::vector<std::pair<PipelineSpec, std::vector<SourceText>>> groups;
  if (fs::path(args.pipeline).extension() != ".json" &&
      NeedsPerDesignSpec(args.pipeline, *literals)) {
    for (const DesignInput& d : *inputs) {
      absl::StatusOr<PipelineSpec> spec = BuildSpec(args, *literals, &d, config.rules);
      if (!spec.ok()) return spec.status();
      groups.push_back({*spec, {d.text}});
    }
  } else {
    absl::StatusOr<PipelineSpec> spec = BuildSpec(args, *literals, nullptr, config.rules);
    if (!spec.ok()) return spec.status();
    std::vector<SourceText> designs;
    for (const DesignInput& d : *inputs) designs.push_back(d.text);
    groups.push_back({*spec, designs});
  }

  int written = 0;
  int failed = 0;
  for (const auto& [spec, designs] : groups) {
    if (sweep) {
      GenerationParams base = spec.steps.empty() ? GenerationParams() : spec.steps[0].params;
      absl::StatusOr<std::vector<SweepCell>> cells =
          SweepParams(spec, designs, TemperatureGrid(base, args.steps), *factory, options);
      if (!cells.ok()) return cells.status();
      for (const SweepCell& cell : *cells) {
        std::string name = absl::StrFormat("%s.t%02d", SafeName(cell.design_id), cell.point);
        absl::Status s = WriteTranscript(args.out_dir, name, cell.transcript);
        if (!s.ok()) return s;
        ++written;
        failed += cell.transcript.failed ? 1 : 0;
      }
    } else {
      absl::StatusOr<std::vector<Transcript>> transcripts =
          RunBatch(spec, designs, *factory, options);
      if (!transcripts.ok()) return transcripts.status();
      for (const Transcript& t : *transcripts) {
        absl::Status s = WriteTranscript(args.out_dir, SafeName(t.design_id), t);
        if (!s.ok()) return s;
        ++written;
        failed += t.failed ? 1 : 0;
      }
    }
  }
  out << "wrote " << written << " transcripts (" << failed << " failed) to " << args.out_dir
      << "\n";
  return kExitOk;
}

// ---- score ----

struct ScoreArgs {
  std::string task = "detection";
  std::string corpus;
  std::vector<std::string> transcripts;
  std::string rule;
  std::string vuln;
  std::vector<uint64_t> seeds;
  std::string format = "json";
  std::string output;
};

absl::StatusOr<std::vector<std::string>> ExpandTranscriptPaths(
    const std::vector<std::string>& paths) {
  std::vector<std::string> out;
  for (const std::string& path : paths) {
    std::error_code ec;
    if (fs::is_directory(path, ec)) {
      std::vector<std::string> found;
      for (const fs::directory_entry& e : fs::directory_iterator(path, ec)) {
        if (e.path().extension() == ".json") found.push_back(e.path().string());
      }
      std::sort(found.begin(), found.end());
      out.insert(out.end(), found.begin(), found.end());
    } else {
      out.push_back(path);
    }
  }
  if (out.empty()) return absl::InvalidArgumentError("no transcripts given");
  return out;
}

absl::StatusOr<int> RunScore(const ScoreArgs& args, const Config& config, std::ostream& out) {
  std::optional<Task> task = ParseTask(args.task);
  if (!task) return absl::InvalidArgumentError(absl::StrCat("unknown task ", args.task));
  ScoreOptions options;
  options.task = *task;
  options.rules = config.rules;
  if (!args.rule.empty()) {
    options.focus = ParseRuleId(args.rule);
    if (!options.focus) return absl::InvalidArgumentError(absl::StrCat("unknown rule ", args.rule));
  }
  if (!args.vuln.empty()) {
    options.intended = ParseVulnClass(args.vuln);
    if (!options.intended) {
      return absl::InvalidArgumentError(absl::StrCat("unknown class ", args.vuln));
    }
  }
  absl::StatusOr<std::string> corpus_text = ReadFile(args.corpus);
  if (!corpus_text.ok()) return corpus_text.status();
  absl::StatusOr<std::vector<CorpusRecord>> records = ParseCorpusJsonl(*corpus_text);
  if (!records.ok()) return records.status();
  absl::StatusOr<std::vector<std::string>> paths = ExpandTranscriptPaths(args.transcripts);
  if (!paths.ok()) return paths.status();
  std::vector<Transcript> transcripts;
  std::set<std::string> providers;
  for (const std::string& path : *paths) {
    absl::StatusOr<std::string> text = ReadFile(path);
    if (!text.ok()) return text.status();
    nlohmann::json value = nlohmann::json::parse(*text, nullptr, false);
    if (value.is_discarded()) return absl::InvalidArgumentError(absl::StrCat(path, ": invalid JSON"));
    absl::StatusOr<Transcript> t = TranscriptFromJson(value);
    if (!t.ok()) {
      return absl::InvalidArgumentError(absl::StrCat(path, ": ", t.status().message()));
    }
    providers.insert(t->provider);
    transcripts.push_back(*std::move(t));
  }
  absl::StatusOr<std::vector<Outcome>> outcomes = ScoreTranscripts(transcripts, *records, options);
  if (!outcomes.ok()) return outcomes.status();
  Provenance provenance;
  provenance.config_hash = config.hash;
  provenance.seeds = args.seeds;
  provenance.provider = absl::StrJoin(providers, ",");
  absl::StatusOr<ExperimentReport> report = ComputeMetrics(*outcomes, provenance);
  if (!report.ok()) return report.status();
  std::string text = args.format == "text" ? FormatExperimentReportText(*report)
                                           : ExperimentReportToJson(*report);
  absl::Status s = Emit(args.output, text, out);
  if (!s.ok()) return s;
  return kExitOk;
}

// ---- sanitize ----

struct SanitizeArgs {
  std::string design;
  std::vector<std::string> keywords;
  uint64_t seed = 0;
  std::string output;
  std::string map;
};

absl::StatusOr<int> RunSanitize(const SanitizeArgs& args, const Config& config,
                                std::ostream& out) {
  absl::StatusOr<SourceText> source = ReadDesign(args.design);
  if (!source.ok()) return source.status();
  SanitizeOptions options;
  options.keywords = args.keywords.empty() ? config.keywords : args.keywords;
  options.seed = args.seed;
  absl::StatusOr<SanitizeResult> result = SanitizeSource(*source, options);
  if (!result.ok()) return result.status();
  absl::Status s = Emit(args.output, result->text.content, out);
  if (!s.ok()) return s;
  std::string map = args.map;
  if (map.empty() && !args.output.empty() && args.output != "-") {
    map = args.output + ".map.json";
  }
  if (!map.empty()) {
    s = Emit(map, RenameMapToJson(result->rename).dump(2) + "\n", out);
    if (!s.ok()) return s;
  }
  return kExitOk;
}

// ---- stg ----

struct StgArgs {
  std::string design;
  std::vector<std::string> protected_names;
};

absl::StatusOr<int> RunStg(const StgArgs& args, std::ostream& out) {
  absl::StatusOr<SourceText> source = ReadDesign(args.design);
  if (!source.ok()) return source.status();
  absl::StatusOr<FsmAst> ast = ParseDesign(*source);
  if (!ast.ok()) return ast.status();
  absl::StatusOr<Stg> stg = ExtractStg(*ast, args.protected_names);
  if (!stg.ok()) return stg.status();
  out << DumpStg(*stg);
  return kExitOk;
}

}  // namespace

int RunCli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Static security checks, defect injection and LLM experiments for FSM RTL",
               "fsmguard"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "JSON settings: rules, corpus, provider, sanitize")
      ->check(CLI::ExistingFile);

  CheckArgs check;
  CLI::App* check_cmd = app.add_subcommand("check", "Run every rule on a design");
  check_cmd->add_option("design", check.design)->required();
  check_cmd->add_option("--protected,-p", check.protected_names)->delimiter(',');
  check_cmd->add_option("--disable", check.disable, "Rule ids to skip")->delimiter(',');
  check_cmd->add_flag("--include-self-edges", check.self_edges);
  check_cmd->add_option("--format", check.format)->check(CLI::IsMember({"text", "json"}));
  check_cmd->add_option("--output,-o", check.output);

  InjectArgs inject;
  CLI::App* inject_cmd = app.add_subcommand("inject", "Inject one defect class");
  inject_cmd->add_option("design", inject.design)->required();
  inject_cmd->add_option("--class", inject.vuln)->required();
  inject_cmd->add_option("--seed", inject.seed);
  inject_cmd->add_option("--target", inject.target, "State to edit");
  inject_cmd->add_option("--source-state", inject.source_state,
                         "Duplicate encoding: state whose code is copied");
  inject_cmd->add_option("--output,-o", inject.output);
  inject_cmd->add_option("--plan", inject.plan);

  MitigateArgs mitigate;
  CLI::App* mitigate_cmd = app.add_subcommand("mitigate", "Repair a design");
  mitigate_cmd->add_option("design", mitigate.design)->required();
  mitigate_cmd->add_option("--protected,-p", mitigate.protected_names)->delimiter(',');
  mitigate_cmd->add_option("--exit-input", mitigate.exit_input);
  mitigate_cmd->add_option("--fallback", mitigate.fallback);
  mitigate_cmd->add_option("--output,-o", mitigate.output, "Repaired design");
  mitigate_cmd->add_option("--report", mitigate.report, "Outcome JSON (default stdout)");

  CorpusArgs corpus;
  CLI::App* corpus_cmd = app.add_subcommand("gen-corpus", "Generate a labeled JSONL corpus");
  corpus_cmd->add_option("bases", corpus.bases)->required()->check(CLI::ExistingFile);
  corpus_cmd->add_option("--mix", corpus.mix, "CLASS=COUNT")->required()->delimiter(',');
  corpus_cmd->add_option("--protected,-p", corpus.protected_names)->delimiter(',');
  corpus_cmd->add_option("--seed", corpus.seed);
  corpus_cmd->add_option("--clean-ratio", corpus.clean_ratio);
  corpus_cmd->add_option("--workers", corpus.workers);
  corpus_cmd->add_option("--output,-o", corpus.output)->required();

  PipelineArgs run;
  CLI::App* run_cmd = app.add_subcommand("run-pipeline", "Run a prompt pipeline on designs");
  PipelineArgs sweep;
  CLI::App* sweep_cmd = app.add_subcommand("sweep", "Run a pipeline over a temperature grid");
  for (auto [cmd, a] : {std::pair{run_cmd, &run}, std::pair{sweep_cmd, &sweep}}) {
    cmd->add_option("designs", a->designs)->check(CLI::ExistingFile);
    cmd->add_option("--pipeline", a->pipeline, "Library name or JSON spec")->required();
    cmd->add_option("--literal", a->literals, "KEY=VALUE bound on every step");
    cmd->add_option("--corpus", a->corpus);
    cmd->add_option("--out-dir", a->out_dir)->required();
    cmd->add_option("--mock-script", a->mock_script);
    cmd->add_option("--top-p", a->top_p);
    cmd->add_option("--jitter-seed", a->jitter_seed);
  }
  run_cmd->add_option("--temperature", run.temperature);
  sweep_cmd->add_option("--steps", sweep.steps, "Grid intervals over [0, 1]");

  ScoreArgs score;
  CLI::App* score_cmd = app.add_subcommand("score", "Score transcripts against corpus labels");
  score_cmd->add_option("transcripts", score.transcripts, "Files or directories")->required();
  score_cmd->add_option("--task", score.task)
      ->check(CLI::IsMember({"insertion", "detection", "mitigation"}));
  score_cmd->add_option("--corpus", score.corpus)->required();
  score_cmd->add_option("--rule", score.rule);
  score_cmd->add_option("--class", score.vuln);
  score_cmd->add_option("--seed", score.seeds, "Recorded in provenance");
  score_cmd->add_option("--format", score.format)->check(CLI::IsMember({"text", "json"}));
  score_cmd->add_option("--output,-o", score.output);

  SanitizeArgs sanitize;
  CLI::App* sanitize_cmd = app.add_subcommand("sanitize", "Neutralize revealing identifiers");
  sanitize_cmd->add_option("design", sanitize.design)->required();
  sanitize_cmd->add_option("--keyword", sanitize.keywords)->delimiter(',');
  sanitize_cmd->add_option("--seed", sanitize.seed);
  sanitize_cmd->add_option("--output,-o", sanitize.output);
  sanitize_cmd->add_option("--map", sanitize.map, "Rename map JSON");

  StgArgs stg;
  CLI::App* stg_cmd = app.add_subcommand("stg", "Print the extracted state transition graph");
  stg_cmd->add_option("design", stg.design)->required();
  stg_cmd->add_option("--protected,-p", stg.protected_names)->delimiter(',');

  std::vector<const char*> argv;
  for (const std::string& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitError;
  }

  absl::StatusOr<Config> config = LoadConfig(config_path);
  if (!config.ok()) {
    err << "fsmguard: " << config.status().message() << "\n";
    return kExitError;
  }
  absl::StatusOr<int> code = absl::InternalError("no subcommand");
  if (check_cmd->parsed()) {
    code = RunCheck(check, *config, out, err);
  } else if (inject_cmd->parsed()) {
    code = RunInject(inject, out);
  } else if (mitigate_cmd->parsed()) {
    code = RunMitigate(mitigate, *config, out);
  } else if (corpus_cmd->parsed()) {
    code = RunGenCorpus(corpus, *config, out);
  } else if (run_cmd->parsed()) {
    code = RunPipelines(run, *config, false, out);
  } else if (sweep_cmd->parsed()) {
    code = RunPipelines(sweep, *config, true, out);
  } else if (score_cmd->parsed()) {
    code = RunScore(score, *config, out);
  } else if (sanitize_cmd->parsed()) {
    code = RunSanitize(sanitize, *config, out);
  } else if (stg_cmd->parsed()) {
    code = RunStg(stg, out);
  }
  if (!code.ok()) {
    err << "fsmguard: " << code.status().message() << "\n";
    return kExitError;
  }
  return *code;
}

}  // namespace fsmguard
