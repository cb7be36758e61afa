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

// Command-line front end. Talks to the library only through the C API.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ace/ace.h"

namespace {

constexpr int kExitFailure = 1;
constexpr int kExitConfig = 2;
constexpr int kExitIo = 3;

int report(ace_status status) {
  if (status == ACE_OK) return 0;
  std::cerr << "ace: " << ace_status_name(status) << ": " << ace_last_error() << "\n";
  switch (status) {
    case ACE_ERR_CONFIG: return kExitConfig;
    case ACE_ERR_IO: return kExitIo;
    default: return kExitFailure;
  }
}

class Config {
 public:
  ~Config() { ace_config_free(handle_); }
  ace_status load(const std::string& path) { return ace_config_load_file(path.c_str(), &handle_); }
  ace_config* get() const { return handle_; }

 private:
  ace_config* handle_ = nullptr;
};

// Flag beats environment, environment beats the config file.
ace_status apply_overrides(const Config& config, const std::vector<std::uint64_t>& seeds,
                           const std::string& output_dir, std::int64_t workers) {
  if (!seeds.empty()) {
    if (ace_status s = ace_config_set_seeds(config.get(), seeds.data(), seeds.size())) return s;
  }
  std::string dir = output_dir;
  if (dir.empty()) {
    if (const char* env = std::getenv("ACE_OUTPUT_DIR"); env != nullptr && *env != '\0') dir = env;
  }
  if (!dir.empty()) {
    if (ace_status s = ace_config_set_output_dir(config.get(), dir.c_str())) return s;
  }
  if (workers >= 0) return ace_config_set_workers(config.get(), workers);
  return ACE_OK;
}

int run_command(const std::string& path, const std::vector<std::uint64_t>& seeds,
                const std::string& output_dir, std::int64_t workers) {
  Config config;
  if (ace_status s = config.load(path)) return report(s);
  if (ace_status s = apply_overrides(config, seeds, output_dir, workers)) return report(s);
  ace_run_result* result = nullptr;
  if (ace_status s = ace_run(config.get(), &result)) return report(s);
  const char* table = nullptr;
  ace_run_result_summary_table(result, &table);
  std::cout << table;
  ace_run_result_free(result);
  return 0;
}

int sweep_command(const std::string& path, const std::vector<double>& percentages,
                  const std::vector<std::uint64_t>& seeds, const std::string& output_dir,
                  const std::string& output, std::int64_t workers) {
  Config config;
  if (ace_status s = config.load(path)) return report(s);
  if (ace_status s = apply_overrides(config, seeds, output_dir, workers)) return report(s);
  std::vector<ace_sweep_row> rows(percentages.size());
  const ace_status s = ace_truncation_sweep(config.get(), percentages.data(), percentages.size(),
                                            output.empty() ? nullptr : output.c_str(),
                                            rows.data());
  if (s != ACE_OK) return report(s);
  std::printf("%-8s %16s %14s %8s\n", "P", "mean best", "total trials", "success");
  for (const auto& row : rows) {
    if (row.has_mean_best) {
      std::printf("%-8.3f %16.6f %14.1f %8.2f\n", row.truncation_percentage,
                  row.mean_best_feasible_score, row.mean_total_trials, row.success_rate);
    } else {
      std::printf("%-8.3f %16s %14.1f %8.2f\n", row.truncation_percentage, "-",
                  row.mean_total_trials, row.success_rate);
    }
  }
  return 0;
}

int theorem_command(std::uint64_t cases, std::uint64_t seed, std::int64_t max_t) {
  ace_theorem_report r{};
  if (ace_status s = ace_validate_theorem(cases, seed, max_t, &r)) return report(s);
  std::printf("cases                %llu\n", static_cast<unsigned long long>(r.cases));
  std::printf("argmin in {1, T}     %llu / %llu\n", static_cast<unsigned long long>(r.extremal),
              static_cast<unsigned long long>(r.cases));
  std::printf("within 1e-9          %llu / %llu\n",
              static_cast<unsigned long long>(r.within_tolerance),
              static_cast<unsigned long long>(r.cases));
  std::printf("interval rule agrees %llu / %llu\n",
              static_cast<unsigned long long>(r.choice_agreed),
              static_cast<unsigned long long>(r.choice_checked));
  std::printf("max relative gap     %.3g\n", r.max_relative_gap);
  std::printf("seconds              %.3f\n", r.seconds);
  std::printf("%s\n", r.passed ? "PASS" : "FAIL");
  return r.passed ? 0 : kExitFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Simulated constrained hyperparameter tuning with ACE, ASHA and baselines"};
  app.set_version_flag("--version", ace_version());
  app.require_subcommand(1);

  std::string config_path;
  std::vector<std::uint64_t> seeds;
  std::string output_dir;
  std::int64_t workers = -1;

  auto* run = app.add_subcommand("run", "Run every scheduler arm on every seed of a config");
  run->add_option("config", config_path, "Experiment config (JSON)")->required()
      ->check(CLI::ExistingFile);
  run->add_option("--seed", seeds, "Seed to run; repeat to give several. Replaces config seeds");
  run->add_option("--output-dir", output_dir, "Output directory (also ACE_OUTPUT_DIR)");
  run->add_option("--workers", workers, "Parallel runs, 0 for one per core")
      ->check(CLI::NonNegativeNumber);

  double p = 0.5;
  double primary_cost = 1.0;
  std::vector<double> ratios;
  std::vector<std::int64_t> iterations;
  std::string curve_output = "cost_curve.csv";
  auto* curve = app.add_subcommand("cost-curve", "Expected trial cost for every beta in [1, T]");
  curve->add_option("--p", p, "Stop probability")->check(CLI::Range(0.0, 1.0));
  curve->add_option("--primary-cost", primary_cost, "Cost per training iteration");
  curve->add_option("--r", ratios, "Cost ratio; repeat or comma-separate")
      ->required()->delimiter(',');
  curve->add_option("--T", iterations, "Max iterations; repeat or comma-separate")
      ->required()->delimiter(',');
  curve->add_option("-o,--output", curve_output, "CSV path");

  std::vector<double> percentages{0.03, 0.13, 0.25, 0.5, 0.75};
  std::string sweep_output;
  auto* sweep = app.add_subcommand("truncation-sweep",
                                   "Re-run the config's ACE arm over truncation percentages");
  sweep->add_option("config", config_path, "Experiment config (JSON)")->required()
      ->check(CLI::ExistingFile);
  sweep->add_option("--percentages", percentages, "Comma-separated values in (0, 1)")
      ->delimiter(',');
  sweep->add_option("--seed", seeds, "Seed to run; repeat to give several");
  sweep->add_option("--output-dir", output_dir, "Output directory (also ACE_OUTPUT_DIR)");
  sweep->add_option("-o,--output", sweep_output, "CSV path");
  sweep->add_option("--workers", workers, "Parallel runs")->check(CLI::NonNegativeNumber);

  std::uint64_t cases = 10000;
  std::uint64_t theorem_seed = 1;
  std::int64_t max_t = 256;
  auto* theorem = app.add_subcommand(
      "validate-theorem", "Check the interval rule against brute force on random cases");
  theorem->add_option("--cases", cases, "Number of random cases");
  theorem->add_option("--seed", theorem_seed, "Sampling seed");
  theorem->add_option("--max-T", max_t, "Largest T drawn")->check(CLI::Range(2, 1 << 20));

  CLI11_PARSE(app, argc, argv);

  if (*run) return run_command(config_path, seeds, output_dir, workers);
  if (*sweep) {
    return sweep_command(config_path, percentages, seeds, output_dir, sweep_output, workers);
  }
  if (*curve) {
    return report(ace_write_cost_curve(curve_output.c_str(), p, primary_cost, ratios.data(),
                                       ratios.size(), iterations.data(), iterations.size()));
  }
  if (*theorem) return theorem_command(cases, theorem_seed, max_t);
  return kExitFailure;
}
