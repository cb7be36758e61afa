// Copyright 2026 The ACE Authors.
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

#ifndef ACE_CORE_EXPERIMENT_HPP_
#define ACE_CORE_EXPERIMENT_HPP_

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/problem.hpp"
#include "core/schedulers.hpp"
#include "core/search_space.hpp"
#include "core/simulator.hpp"

namespace ace {

// A full experiment: one problem, one search space, several scheduler arms,
// each run once per seed.
struct ExperimentConfig {
  Problem problem = Problem::preset("fairness-like");
  SearchSpace space;
  std::vector<SchedulerSpec> arms;
  double budget = 1000.0;
  std::int64_t max_concurrent = 4;
  std::vector<std::uint64_t> seeds;
  std::filesystem::path output_dir = "ace-output";
  std::int64_t workers = 0;  // 0: one per hardware thread
};

// Parses and validates a JSON document. Unknown keys and out-of-domain
// values raise ConfigError naming the key path, e.g.
// "schedulers[0].truncation_percentage".
ExperimentConfig parse_config(std::string_view json_text);
ExperimentConfig load_config(const std::filesystem::path& path);

// Parses one scheduler object. ASHA arms without max_time_units use
// `default_max_time_units`.
SchedulerSpec parse_scheduler_spec(std::string_view json_text,
                                   std::int64_t default_max_time_units);

// Per-seed outcome of one arm. Everything here can be recomputed from the
// run's trace file.
struct SeedResult {
  std::uint64_t seed = 0;
  bool feasible_found = false;
  std::optional<double> best_feasible_score;
  std::optional<double> time_to_best;
  std::int64_t total_trials = 0;
  std::int64_t interval_one = 0;
  std::int64_t interval_full = 0;
  std::int64_t constraint_evaluations = 0;
  std::int64_t post_hoc_evaluations = 0;
  double elapsed = 0.0;
  std::optional<double> measured_cost_ratio;
};

SeedResult seed_result(std::uint64_t seed, const ExperimentReport& report);

struct ArmSummary {
  std::string name;
  std::vector<SeedResult> seeds;
  // Over seeds that found a feasible trial; sd is the n - 1 sample deviation.
  std::optional<double> mean_best_feasible_score;
  std::optional<double> sd_best_feasible_score;
  std::optional<double> mean_time_to_best;
  double mean_total_trials = 0.0;
  double mean_constraint_evaluations = 0.0;
  double success_rate = 0.0;
  std::optional<double> interval_one_fraction;
};

ArmSummary summarize_arm(std::string name, std::vector<SeedResult> seeds);

struct RunArtifacts {
  std::vector<ArmSummary> arms;
  std::vector<std::filesystem::path> trace_files;
  std::filesystem::path summary_csv;
  std::filesystem::path summary_text;
  std::string summary_table;
};

// Runs one arm for one seed without touching the filesystem.
ExperimentReport run_arm(const ExperimentConfig& config, const SchedulerSpec& arm,
                         std::uint64_t seed);

// Runs every (arm, seed) pair and writes:
//   <out>/<arm>/trace_seed<seed>.csv, <out>/<arm>/summary.json,
//   <out>/summary.csv, <out>/summary.txt
RunArtifacts run_config(const ExperimentConfig& config);

struct SweepRow {
  double truncation_percentage = 0.0;
  std::optional<double> mean_best_feasible_score;
  double mean_total_trials = 0.0;
  double success_rate = 0.0;
};

// Re-runs the config's first ACE arm once per truncation percentage on the
// same seeds and writes the summary CSV to `output` (default
// <out>/truncation_sweep.csv).
std::vector<SweepRow> truncation_sweep(const ExperimentConfig& config,
                                       const std::vector<double>& percentages,
                                       const std::optional<std::filesystem::path>& output);

void write_trace_csv(std::ostream& out, const ExperimentReport& report);
std::string format_summary_table(const std::vector<ArmSummary>& arms, std::string_view metric);

}  // namespace ace

#endif  // ACE_CORE_EXPERIMENT_HPP_
