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

#include "fsmguard/llm/sweep.h"

#include <algorithm>
#include <atomic>
#include <optional>
#include <set>
#include <thread>

#include "absl/status/status.h"
#include "absl/strings/str_cat.h"
#include "fsmguard/util/seeds.h"

namespace fsmguard {
namespace {

struct Job {
  size_t design;
  int point;
  // Unset: use the pipeline's own parameters.
  std::optional<GenerationParams> params;
};

absl::StatusOr<std::vector<SweepCell>> RunJobs(const PipelineSpec& spec,
                                               const std::vector<SourceText>& designs,
                                               const std::vector<Job>& jobs,
                                               const ProviderFactory& factory,
                                               const SweepOptions& options) {
  if (auto s = ValidatePipeline(spec); !s.ok()) return s;
  std::set<std::string> ids;
  for (const SourceText& d : designs) {
    if (!ids.insert(d.origin).second) {
      return absl::InvalidArgumentError(absl::StrCat("duplicate design id '", d.origin, "'"));
    }
  }
  std::vector<SweepCell> cells(jobs.size());
  std::atomic<size_t> next{0};
  auto worker = [&]() {
    for (size_t i = next++; i < jobs.size(); i = next++) {
      const Job& job = jobs[i];
      PipelineSpec point_spec = job.params.has_value() ? WithParams(spec, *job.params) : spec;
      std::unique_ptr<ChatProvider> provider = factory();
      RunOptions run = options.run;
      run.jitter_seed = DeriveSeed(options.run.jitter_seed, i);
      SweepCell& cell = cells[i];
      cell.design_id = designs[job.design].origin;
      cell.point = job.point;
      cell.params = job.params.value_or(spec.steps.front().params);
      cell.transcript = RunPipeline(point_spec, designs[job.design], *provider, run);
    }
  };
  size_t threads = std::min<size_t>(std::max(1, options.max_in_flight), jobs.size());
  std::vector<std::thread> pool;
  for (size_t t = 0; t < threads; ++t) pool.emplace_back(worker);
  for (std::thread& t : pool) t.join();
  return cells;
}

}  // namespace

absl::StatusOr<std::vector<SweepCell>> SweepParams(const PipelineSpec& spec,
                                                   const std::vector<SourceText>& designs,
                                                   const std::vector<GenerationParams>& grid,
                                                   const ProviderFactory& factory,
                                                   const SweepOptions& options) {
  if (grid.empty()) return absl::InvalidArgumentError("empty parameter grid");
  std::vector<Job> jobs;
  for (size_t d = 0; d < designs.size(); ++d) {
    for (size_t p = 0; p < grid.size(); ++p) jobs.push_back({d, static_cast<int>(p), grid[p]});
  }
  return RunJobs(spec, designs, jobs, factory, options);
}

absl::StatusOr<std::vector<Transcript>> RunBatch(const PipelineSpec& spec,
                                                 const std::vector<SourceText>& designs,
                                                 const ProviderFactory& factory,
                                                 const SweepOptions& options) {
  std::vector<Job> jobs;
  for (size_t d = 0; d < designs.size(); ++d) jobs.push_back({d, 0, std::nullopt});
  auto cells = RunJobs(spec, designs, jobs, factory, options);
  if (!cells.ok()) return cells.status();
  std::vector<Transcript> out;
  for (SweepCell& cell : *cells) out.push_back(std::move(cell.transcript));
  return out;
}

}  // namespace fsmguard
