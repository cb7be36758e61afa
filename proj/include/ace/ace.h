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

// C interface to the ACE tuning library.
//
// Every function returns an ace_status. On failure the message is available
// from ace_last_error() on the calling thread until the next call.
// Handles are opaque; release them with the matching *_free function.

#ifndef ACE_ACE_H_
#define ACE_ACE_H_

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#if defined(ACE_BUILDING_LIBRARY)
#define ACE_API __declspec(dllexport)
#else
#define ACE_API __declspec(dllimport)
#endif
#else
#define ACE_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum ace_status {
  ACE_OK = 0,
  ACE_ERR_INVALID_ARGUMENT = 1,  // null pointer or bad handle
  ACE_ERR_DOMAIN = 2,
  ACE_ERR_DEGENERATE_RANGE = 3,
  ACE_ERR_CONFIG = 4,
  ACE_ERR_IO = 5,
  ACE_ERR_INVARIANT = 6,
  ACE_ERR_INTERNAL = 7
} ace_status;

ACE_API const char* ace_version(void);
ACE_API const char* ace_status_name(ace_status status);
// Empty string when the previous call on this thread succeeded.
ACE_API const char* ace_last_error(void);

// For config errors, the offending key path ("schedulers[0].name").
ACE_API const char* ace_last_error_key(void);

// ---------------------------------------------------------------------------
// Cost model

ACE_API ace_status ace_expected_cost_exact(double constraint_cost, double primary_cost,
                                           double stop_probability, int64_t max_iterations,
                                           int64_t interval, double* out_cost);
ACE_API ace_status ace_expected_cost_closed(double primary_cost, double cost_ratio,
                                            double stop_probability, int64_t max_iterations,
                                            int64_t interval, double* out_cost);
ACE_API ace_status ace_cost_ratio_threshold(double stop_probability, int64_t max_iterations,
                                            double* out_threshold);
ACE_API ace_status ace_choose_interval(double cost_ratio, double stop_probability,
                                       int64_t max_iterations, int64_t* out_interval);
ACE_API ace_status ace_brute_force_optimal_interval(double primary_cost, double cost_ratio,
                                                    double stop_probability,
                                                    int64_t max_iterations,
                                                    int64_t* out_interval, double* out_cost);

typedef struct ace_theorem_report {
  uint64_t cases;
  uint64_t extremal;
  uint64_t within_tolerance;
  uint64_t choice_checked;
  uint64_t choice_agreed;
  double max_relative_gap;
  double seconds;
  int passed;
} ace_theorem_report;

ACE_API ace_status ace_validate_theorem(uint64_t cases, uint64_t seed, int64_t max_iterations,
                                        ace_theorem_report* out_report);

// Writes CSV rows (p, r, T, beta, expected_cost) for every (ratio, T) pair.
ACE_API ace_status ace_write_cost_curve(const char* path, double stop_probability,
                                        double primary_cost, const double* cost_ratios,
                                        size_t ratio_count, const int64_t* max_iterations,
                                        size_t iteration_count);

// ---------------------------------------------------------------------------
// Experiments

typedef struct ace_config ace_config;
typedef struct ace_run_result ace_run_result;

ACE_API ace_status ace_config_load_file(const char* path, ace_config** out_config);
ACE_API ace_status ace_config_parse(const char* json_text, ace_config** out_config);
ACE_API void ace_config_free(ace_config* config);
ACE_API ace_status ace_config_set_seeds(ace_config* config, const uint64_t* seeds, size_t count);
ACE_API ace_status ace_config_set_output_dir(ace_config* config, const char* path);
ACE_API ace_status ace_config_set_workers(ace_config* config, int64_t workers);
ACE_API ace_status ace_config_arm_count(const ace_config* config, size_t* out_count);

typedef struct ace_arm_summary {
  const char* name;  // owned by the result handle
  size_t seeds;
  int has_mean_best;
  double mean_best_feasible_score;
  int has_sd_best;
  double sd_best_feasible_score;
  int has_mean_time_to_best;
  double mean_time_to_best;
  double mean_total_trials;
  double mean_constraint_evaluations;
  double success_rate;
  int has_interval_one_fraction;
  double interval_one_fraction;
} ace_arm_summary;

// Runs every (arm, seed) pair and writes trace and summary files under the
// config's output directory.
ACE_API ace_status ace_run(const ace_config* config, ace_run_result** out_result);
ACE_API void ace_run_result_free(ace_run_result* result);
ACE_API ace_status ace_run_result_arm_count(const ace_run_result* result, size_t* out_count);
ACE_API ace_status ace_run_result_arm(const ace_run_result* result, size_t index,
                                      ace_arm_summary* out_summary);
// Plain-text table, owned by the result handle.
ACE_API ace_status ace_run_result_summary_table(const ace_run_result* result,
                                                const char** out_text);

typedef struct ace_sweep_row {
  double truncation_percentage;
  int has_mean_best;
  double mean_best_feasible_score;
  double mean_total_trials;
  double success_rate;
} ace_sweep_row;

// out_rows must hold `count` rows. output_path may be NULL for the default
// <output_dir>/truncation_sweep.csv.
ACE_API ace_status ace_truncation_sweep(const ace_config* config, const double* percentages,
                                        size_t count, const char* output_path,
                                        ace_sweep_row* out_rows);

// ---------------------------------------------------------------------------
// Driving a scheduler from outside the simulator. Metrics are in
// minimization form.

typedef struct ace_scheduler ace_scheduler;

typedef struct ace_trial_progress {
  int64_t trial;
  int64_t iteration;
  int64_t max_iterations;
  double opt_metric;
  int64_t best_iteration;
  double best_opt_metric;
  double sim_time;
} ace_trial_progress;

typedef struct ace_constraint_observation {
  int64_t checkpoint;
  double opt_metric;
  double value;
} ace_constraint_observation;

typedef enum ace_group {
  ACE_GROUP_NO_CONSTRAINT = 0,
  ACE_GROUP_VALID = 1,
  ACE_GROUP_INVALID = 2
} ace_group;

typedef struct ace_decision {
  int stop;
  int evaluate_constraint;
  ace_group group;
  int64_t rank;
  int64_t group_size;
} ace_decision;

// arm_json is one scheduler object as it appears in an experiment config,
// e.g. {"name": "ace", "type": "ace", "truncation_percentage": 0.25}.
ACE_API ace_status ace_scheduler_create(const char* arm_json, double constraint_threshold,
                                        int64_t max_time_units, ace_scheduler** out_scheduler);
ACE_API void ace_scheduler_free(ace_scheduler* scheduler);
// out_interval is 0 when the policy has no constraint interval.
ACE_API ace_status ace_scheduler_trial_start(ace_scheduler* scheduler, int64_t trial,
                                             int64_t max_iterations, int64_t* out_interval);
ACE_API ace_status ace_scheduler_request_constraint(ace_scheduler* scheduler,
                                                    const ace_trial_progress* progress,
                                                    int* out_evaluate, int64_t* out_checkpoint);
// observation may be NULL when no constraint was measured.
ACE_API ace_status ace_scheduler_checkpoint(ace_scheduler* scheduler,
                                            const ace_trial_progress* progress,
                                            const ace_constraint_observation* observation,
                                            ace_decision* out_decision);
// A zero cost records no sample for that stream.
ACE_API ace_status ace_scheduler_observe_costs(ace_scheduler* scheduler, double primary_cost,
                                               double constraint_cost);

#ifdef __cplusplus
}  // extern "C"
#endif

#endif  // ACE_ACE_H_
