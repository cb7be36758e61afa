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

#include <gtest/gtest.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "ace/ace.h"

namespace {

namespace fs = std::filesystem;

fs::path scratch_dir(const std::string& leaf) {
  const char* root = std::getenv("ACE_TEST_TMP");
  fs::path dir = fs::path(root != nullptr ? root : fs::temp_directory_path().string()) / leaf;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

constexpr const char* kTinyConfig = R"({
  "problem": {"preset": "fairness-like"},
  "budget": 150, "max_concurrent": 2, "seeds": [1, 2],
  "schedulers": [{"name": "ace", "type": "ace"},
                 {"name": "plain", "type": "no_stopping", "constraint_callback": true}]
})";

TEST(CApi, VersionAndStatusNames) {
  EXPECT_STREQ(ace_version(), "0.1.0");
  EXPECT_STREQ(ace_status_name(ACE_OK), "ok");
  EXPECT_STRNE(ace_status_name(ACE_ERR_CONFIG), ace_status_name(ACE_ERR_IO));
}

TEST(CApi, CostFunctionsMatchHandValues) {
  double cost = 0.0;
  ASSERT_EQ(ace_expected_cost_exact(2, 1, 0.5, 4, 2, &cost), ACE_OK);
  EXPECT_DOUBLE_EQ(cost, 6.0);
  ASSERT_EQ(ace_expected_cost_closed(1, 20, 0.5, 16, 16, &cost), ACE_OK);
  EXPECT_DOUBLE_EQ(cost, 36.0);
  ASSERT_EQ(ace_expected_cost_closed(1, 20, 0.5, 16, 1, &cost), ACE_OK);
  EXPECT_DOUBLE_EQ(cost, 41.999359130859375);

  double threshold = 0.0;
  ASSERT_EQ(ace_cost_ratio_threshold(0.5, 16, &threshold), ACE_OK);
  EXPECT_NEAR(threshold, 14.00045777764214, 1e-9);

  std::int64_t beta = 0;
  ASSERT_EQ(ace_choose_interval(20, 0.5, 16, &beta), ACE_OK);
  EXPECT_EQ(beta, 16);
  ASSERT_EQ(ace_choose_interval(1, 0.5, 16, &beta), ACE_OK);
  EXPECT_EQ(beta, 1);

  ASSERT_EQ(ace_brute_force_optimal_interval(1, 20, 0.5, 16, &beta, &cost), ACE_OK);
  EXPECT_EQ(beta, 16);
  EXPECT_DOUBLE_EQ(cost, 36.0);
}

TEST(CApi, ErrorsCarryStatusAndMessage) {
  double cost = 0.0;
  EXPECT_EQ(ace_expected_cost_exact(1, 1, 1.5, 4, 2, &cost), ACE_ERR_DOMAIN);
  EXPECT_NE(std::string(ace_last_error()), "");
  EXPECT_EQ(ace_expected_cost_exact(1, 1, 0.5, 4, 2, nullptr), ACE_ERR_INVALID_ARGUMENT);
  double threshold = 0.0;
  EXPECT_EQ(ace_cost_ratio_threshold(0.5, 1, &threshold), ACE_ERR_DEGENERATE_RANGE);
  ASSERT_EQ(ace_expected_cost_exact(2, 1, 0.5, 4, 2, &cost), ACE_OK);
  EXPECT_STREQ(ace_last_error(), "");
}

TEST(CApi, TheoremValidation) {
  ace_theorem_report report{};
  ASSERT_EQ(ace_validate_theorem(500, 7, 64, &report), ACE_OK);
  EXPECT_EQ(report.cases, 500u);
  EXPECT_EQ(report.within_tolerance, report.cases);
  EXPECT_EQ(report.choice_agreed, report.choice_checked);
  EXPECT_TRUE(report.passed);
}

TEST(CApi, CostCurveFile) {
  const fs::path path = scratch_dir("curve") / "curve.csv";
  const double ratios[] = {1.0, 20.0};
  const std::int64_t ts[] = {8, 16};
  ASSERT_EQ(ace_write_cost_curve(path.c_str(), 0.5, 1.0, ratios, 2, ts, 2), ACE_OK);
  const std::string text = slurp(path);
  std::size_t lines = 0;
  for (char c : text) lines += c == '\n';
  EXPECT_GT(lines, 4u);
}

TEST(CApi, ConfigErrorsNameTheKey) {
  ace_config* config = nullptr;
  EXPECT_EQ(ace_config_parse(R"({"problem": {"preset": "fairness-like"}, "budget": 10,
      "schedulers": [{"name": "a", "type": "ace", "truncation_percentage": 2}]})",
                             &config),
            ACE_ERR_CONFIG);
  EXPECT_EQ(config, nullptr);
  EXPECT_STREQ(ace_last_error_key(), "schedulers[0].truncation_percentage");
  EXPECT_EQ(ace_config_parse("{not json", &config), ACE_ERR_CONFIG);
  EXPECT_EQ(ace_config_load_file("/nonexistent/ace.json", &config), ACE_ERR_IO);
}

TEST(CApi, RunWritesOutputsAndSummaries) {
  ace_config* config = nullptr;
  ASSERT_EQ(ace_config_parse(kTinyConfig, &config), ACE_OK);
  std::size_t arms = 0;
  ASSERT_EQ(ace_config_arm_count(config, &arms), ACE_OK);
  EXPECT_EQ(arms, 2u);
  const fs::path out = scratch_dir("run");
  ASSERT_EQ(ace_config_set_output_dir(config, out.c_str()), ACE_OK);
  const std::uint64_t seeds[] = {5, 6, 7};
  ASSERT_EQ(ace_config_set_seeds(config, seeds, 3), ACE_OK);
  ASSERT_EQ(ace_config_set_workers(config, 2), ACE_OK);

  ace_run_result* result = nullptr;
  ASSERT_EQ(ace_run(config, &result), ACE_OK);
  ASSERT_EQ(ace_run_result_arm_count(result, &arms), ACE_OK);
  ASSERT_EQ(arms, 2u);
  ace_arm_summary summary{};
  ASSERT_EQ(ace_run_result_arm(result, 0, &summary), ACE_OK);
  EXPECT_STREQ(summary.name, "ace");
  EXPECT_EQ(summary.seeds, 3u);
  EXPECT_GT(summary.mean_total_trials, 0.0);
  EXPECT_GE(summary.success_rate, 0.0);
  EXPECT_LE(summary.success_rate, 1.0);
  EXPECT_TRUE(summary.has_interval_one_fraction);
  EXPECT_EQ(ace_run_result_arm(result, 2, &summary), ACE_ERR_INVALID_ARGUMENT);
  const char* table = nullptr;
  ASSERT_EQ(ace_run_result_summary_table(result, &table), ACE_OK);
  EXPECT_NE(std::string(table).find("plain"), std::string::npos);

  EXPECT_TRUE(fs::exists(out / "ace" / "trace_seed5.csv"));
  EXPECT_TRUE(fs::exists(out / "plain" / "summary.json"));
  EXPECT_TRUE(fs::exists(out / "summary.csv"));
  ace_run_result_free(result);

  ace_sweep_row rows[2]{};
  const double percentages[] = {0.1, 0.5};
  const fs::path sweep = out / "sweep.csv";
  ASSERT_EQ(ace_truncation_sweep(config, percentages, 2, sweep.c_str(), rows), ACE_OK);
  EXPECT_EQ(rows[0].truncation_percentage, 0.1);
  EXPECT_EQ(rows[1].truncation_percentage, 0.5);
  EXPECT_TRUE(fs::exists(sweep));
  ace_config_free(config);
}

TEST(CApi, NullHandlesAreRejected) {
  std::size_t n = 0;
  EXPECT_EQ(ace_config_arm_count(nullptr, &n), ACE_ERR_INVALID_ARGUMENT);
  EXPECT_EQ(ace_run(nullptr, nullptr), ACE_ERR_INVALID_ARGUMENT);
  ace_config_free(nullptr);
  ace_run_result_free(nullptr);
  ace_scheduler_free(nullptr);
}

TEST(CApi, SchedulerHandleDrivesAceDecisions) {
  ace_scheduler* s = nullptr;
  ASSERT_EQ(ace_scheduler_create(R"({"name": "a", "type": "ace", "truncation_percentage": 0.5,
                                     "interval_mode": "fixed_one", "low_overhead_gate": false})",
                                 0.25, 64, &s),
            ACE_OK);
  std::int64_t interval = -1;
  for (std::int64_t trial = 0; trial < 2; ++trial) {
    ASSERT_EQ(ace_scheduler_trial_start(s, trial, 4, &interval), ACE_OK);
    EXPECT_EQ(interval, 1);
  }
  // Trial 0 is feasible and good; trial 1 is feasible and worse, so it is
  // the worst of two valid trials once both have reported.
  ace_decision d{};
  for (std::int64_t trial = 0; trial < 2; ++trial) {
    const double opt = trial == 0 ? 0.1 : 0.9;
    ace_trial_progress p{trial, 1, 4, opt, 1, opt, 0.0};
    int evaluate = 0;
    std::int64_t checkpoint = 0;
    ASSERT_EQ(ace_scheduler_request_constraint(s, &p, &evaluate, &checkpoint), ACE_OK);
    ASSERT_EQ(evaluate, 1);
    EXPECT_EQ(checkpoint, 1);
    ace_constraint_observation obs{1, opt, 0.1};
    ASSERT_EQ(ace_scheduler_checkpoint(s, &p, &obs, &d), ACE_OK);
    EXPECT_EQ(d.group, ACE_GROUP_VALID);
  }
  EXPECT_TRUE(d.stop);
  EXPECT_EQ(d.rank, 1);
  EXPECT_EQ(d.group_size, 2);
  EXPECT_EQ(ace_scheduler_observe_costs(s, 1.0, 2.0), ACE_OK);
  EXPECT_EQ(ace_scheduler_observe_costs(s, -1.0, 2.0), ACE_ERR_DOMAIN);
  ace_scheduler_free(s);

  EXPECT_EQ(ace_scheduler_create(R"({"name": "a", "type": "nope"})", 0.25, 64, &s),
            ACE_ERR_CONFIG);
}

TEST(CApi, GateSkipsCheckpointsThatCannotBeatTheBest) {
  ace_scheduler* s = nullptr;
  ASSERT_EQ(ace_scheduler_create(R"({"name": "a", "type": "ace", "interval_mode": "fixed_one"})",
                                 0.25, 64, &s),
            ACE_OK);
  std::int64_t interval = 0;
  int evaluate = 0;
  std::int64_t checkpoint = 0;
  ace_decision d{};
  ASSERT_EQ(ace_scheduler_trial_start(s, 0, 4, &interval), ACE_OK);
  ace_trial_progress good{0, 1, 4, 0.1, 1, 0.1, 0.0};
  ASSERT_EQ(ace_scheduler_request_constraint(s, &good, &evaluate, &checkpoint), ACE_OK);
  EXPECT_EQ(evaluate, 1);
  ace_constraint_observation obs{1, 0.1, 0.1};
  ASSERT_EQ(ace_scheduler_checkpoint(s, &good, &obs, &d), ACE_OK);

  ASSERT_EQ(ace_scheduler_trial_start(s, 1, 4, &interval), ACE_OK);
  ace_trial_progress worse{1, 1, 4, 0.9, 1, 0.9, 0.0};
  ASSERT_EQ(ace_scheduler_request_constraint(s, &worse, &evaluate, &checkpoint), ACE_OK);
  EXPECT_EQ(evaluate, 0);
  ASSERT_EQ(ace_scheduler_checkpoint(s, &worse, nullptr, &d), ACE_OK);
  EXPECT_EQ(d.group, ACE_GROUP_NO_CONSTRAINT);
  ace_scheduler_free(s);
}

}  // namespace
