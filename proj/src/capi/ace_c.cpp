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

#include "ace/ace.h"

#include <exception>
#include <fstream>
#include <memory>
#include <new>
#include <string>
#include <vector>

#include "core/cost_model.hpp"
#include "core/errors.hpp"
#include "core/experiment.hpp"
#include "core/schedulers.hpp"
#include "core/theorem_sweep.hpp"

struct ace_config {
  ace::ExperimentConfig config;
};

struct ace_run_result {
  ace::RunArtifacts artifacts;
};

struct ace_scheduler {
  std::unique_ptr<ace::Scheduler> scheduler;
};

namespace {

thread_local std::string last_error;
thread_local std::string last_error_key;

ace_status fail(ace_status status, const std::string& message, std::string key = {}) {
  last_error = message;
  last_error_key = std::move(key);
  return status;
}

ace_status succeed() {
  last_error.clear();
  last_error_key.clear();
  return ACE_OK;
}

template <typename Fn>
ace_status guarded(Fn&& fn) {
  try {
    fn();
    return succeed();
  } catch (const ace::ConfigError& e) {
    return fail(ACE_ERR_CONFIG, e.what(), e.key());
  } catch (const ace::DegenerateRangeError& e) {
    return fail(ACE_ERR_DEGENERATE_RANGE, e.what());
  } catch (const ace::DomainError& e) {
    return fail(ACE_ERR_DOMAIN, e.what());
  } catch (const ace::IoError& e) {
    return fail(ACE_ERR_IO, e.what());
  } catch (const ace::InvariantError& e) {
    return fail(ACE_ERR_INVARIANT, e.what());
  } catch (const std::bad_alloc&) {
    return fail(ACE_ERR_INTERNAL, "out of memory");
  } catch (const std::exception& e) {
    return fail(ACE_ERR_INTERNAL, e.what());
  } catch (...) {
    return fail(ACE_ERR_INTERNAL, "unknown error");
  }
}

ace_status null_argument(const char* name) {
  return fail(ACE_ERR_INVALID_ARGUMENT, std::string("null argument: ") + name);
}

ace::TrialProgress to_progress(const ace_trial_progress& p) {
  ace::TrialProgress out;
  out.trial = p.trial;
  out.iteration = p.iteration;
  out.max_iterations = p.max_iterations;
  out.opt_metric = p.opt_metric;
  out.best_iteration = p.best_iteration;
  out.best_opt_metric = p.best_opt_metric;
  out.sim_time = p.sim_time;
  return out;
}

ace::CostParams cost_params(double c1, double c2, double p, int64_t t, int64_t beta) {
  ace::CostParams params;
  params.constraint_cost_per_eval = c1;
  params.primary_cost_per_iter = c2;
  params.stop_probability = p;
  params.max_iterations = t;
  params.interval = beta;
  return params;
}

}  // namespace

extern "C" {

const char* ace_version(void) { return "0.1.0"; }

const char* ace_status_name(ace_status status) {
  switch (status) {
    case ACE_OK: return "ok";
    case ACE_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case ACE_ERR_DOMAIN: return "domain_error";
    case ACE_ERR_DEGENERATE_RANGE: return "degenerate_range";
    case ACE_ERR_CONFIG: return "config_error";
    case ACE_ERR_IO: return "io_error";
    case ACE_ERR_INVARIANT: return "invariant_violation";
    case ACE_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* ace_last_error(void) { return last_error.c_str(); }
const char* ace_last_error_key(void) { return last_error_key.c_str(); }

ace_status ace_expected_cost_exact(double constraint_cost, double primary_cost,
                                   double stop_probability, int64_t max_iterations,
                                   int64_t interval, double* out_cost) {
  if (out_cost == nullptr) return null_argument("out_cost");
  return guarded([&] {
    *out_cost = ace::expected_cost_exact(
        cost_params(constraint_cost, primary_cost, stop_probability, max_iterations, interval));
  });
}

ace_status ace_expected_cost_closed(double primary_cost, double cost_ratio,
                                    double stop_probability, int64_t max_iterations,
                                    int64_t interval, double* out_cost) {
  if (out_cost == nullptr) return null_argument("out_cost");
  return guarded([&] {
    *out_cost = ace::expected_cost_closed(cost_params(cost_ratio * primary_cost, primary_cost,
                                                      stop_probability, max_iterations, interval));
  });
}

ace_status ace_cost_ratio_threshold(double stop_probability, int64_t max_iterations,
                                    double* out_threshold) {
  if (out_threshold == nullptr) return null_argument("out_threshold");
  return guarded(
      [&] { *out_threshold = ace::cost_ratio_threshold(stop_probability, max_iterations); });
}

ace_status ace_choose_interval(double cost_ratio, double stop_probability,
                               int64_t max_iterations, int64_t* out_interval) {
  if (out_interval == nullptr) return null_argument("out_interval");
  return guarded([&] {
    *out_interval = ace::choose_interval(cost_ratio, stop_probability, max_iterations);
  });
}

ace_status ace_brute_force_optimal_interval(double primary_cost, double cost_ratio,
                                            double stop_probability, int64_t max_iterations,
                                            int64_t* out_interval, double* out_cost) {
  if (out_interval == nullptr) return null_argument("out_interval");
  if (out_cost == nullptr) return null_argument("out_cost");
  return guarded([&] {
    const auto best = ace::brute_force_optimal_interval(primary_cost, cost_ratio,
                                                        stop_probability, max_iterations);
    *out_interval = best.interval;
    *out_cost = best.cost;
  });
}

ace_status ace_validate_theorem(uint64_t cases, uint64_t seed, int64_t max_iterations,
                                ace_theorem_report* out_report) {
  if (out_report == nullptr) return null_argument("out_report");
  return guarded([&] {
    const auto r = ace::run_theorem_sweep(cases, seed, max_iterations);
    *out_report = {r.cases,           r.extremal,         r.within_tolerance, r.choice_checked,
                   r.choice_agreed,   r.max_relative_gap, r.seconds,          r.passed() ? 1 : 0};
  });
}

ace_status ace_write_cost_curve(const char* path, double stop_probability, double primary_cost,
                                const double* cost_ratios, size_t ratio_count,
                                const int64_t* max_iterations, size_t iteration_count) {
  if (path == nullptr) return null_argument("path");
  if (cost_ratios == nullptr && ratio_count > 0) return null_argument("cost_ratios");
  if (max_iterations == nullptr && iteration_count > 0) return null_argument("max_iterations");
  return guarded([&] {
    const std::vector<double> ratios(cost_ratios, cost_ratios + ratio_count);
    const std::vector<std::int64_t> ts(max_iterations, max_iterations + iteration_count);
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw ace::IoError(std::string("cannot open '") + path + "' for writing");
    ace::write_cost_curve(out, stop_probability, primary_cost, ratios, ts);
    if (!out.flush()) throw ace::IoError(std::string("failed writing '") + path + "'");
  });
}

ace_status ace_config_load_file(const char* path, ace_config** out_config) {
  if (path == nullptr) return null_argument("path");
  if (out_config == nullptr) return null_argument("out_config");
  *out_config = nullptr;
  return guarded([&] { *out_config = new ace_config{ace::load_config(path)}; });
}

ace_status ace_config_parse(const char* json_text, ace_config** out_config) {
  if (json_text == nullptr) return null_argument("json_text");
  if (out_config == nullptr) return null_argument("out_config");
  *out_config = nullptr;
  return guarded([&] { *out_config = new ace_config{ace::parse_config(json_text)}; });
}

void ace_config_free(ace_config* config) { delete config; }

ace_status ace_config_set_seeds(ace_config* config, const uint64_t* seeds, size_t count) {
  if (config == nullptr) return null_argument("config");
  if (seeds == nullptr) return null_argument("seeds");
  if (count == 0) return fail(ACE_ERR_CONFIG, "seeds: expected at least one seed", "seeds");
  config->config.seeds.assign(seeds, seeds + count);
  return succeed();
}

ace_status ace_config_set_output_dir(ace_config* config, const char* path) {
  if (config == nullptr) return null_argument("config");
  if (path == nullptr || *path == '\0') return null_argument("path");
  config->config.output_dir = path;
  return succeed();
}

ace_status ace_config_set_workers(ace_config* config, int64_t workers) {
  if (config == nullptr) return null_argument("config");
  if (workers < 0) return fail(ACE_ERR_CONFIG, "workers: must be >= 0", "workers");
  config->config.workers = workers;
  return succeed();
}

ace_status ace_config_arm_count(const ace_config* config, size_t* out_count) {
  if (config == nullptr) return null_argument("config");
  if (out_count == nullptr) return null_argument("out_count");
  *out_count = config->config.arms.size();
  return succeed();
}

ace_status ace_run(const ace_config* config, ace_run_result** out_result) {
  if (config == nullptr) return null_argument("config");
  if (out_result == nullptr) return null_argument("out_result");
  *out_result = nullptr;
  return guarded([&] { *out_result = new ace_run_result{ace::run_config(config->config)}; });
}

void ace_run_result_free(ace_run_result* result) { delete result; }

ace_status ace_run_result_arm_count(const ace_run_result* result, size_t* out_count) {
  if (result == nullptr) return null_argument("result");
  if (out_count == nullptr) return null_argument("out_count");
  *out_count = result->artifacts.arms.size();
  return succeed();
}

ace_status ace_run_result_arm(const ace_run_result* result, size_t index,
                              ace_arm_summary* out_summary) {
  if (result == nullptr) return null_argument("result");
  if (out_summary == nullptr) return null_argument("out_summary");
  if (index >= result->artifacts.arms.size()) {
    return fail(ACE_ERR_INVALID_ARGUMENT, "arm index out of range");
  }
  const ace::ArmSummary& a = result->artifacts.arms[index];
  ace_arm_summary s{};
  s.name = a.name.c_str();
  s.seeds = a.seeds.size();
  s.has_mean_best = a.mean_best_feasible_score.has_value();
  s.mean_best_feasible_score = a.mean_best_feasible_score.value_or(0.0);
  s.has_sd_best = a.sd_best_feasible_score.has_value();
  s.sd_best_feasible_score = a.sd_best_feasible_score.value_or(0.0);
  s.has_mean_time_to_best = a.mean_time_to_best.has_value();
  s.mean_time_to_best = a.mean_time_to_best.value_or(0.0);
  s.mean_total_trials = a.mean_total_trials;
  s.mean_constraint_evaluations = a.mean_constraint_evaluations;
  s.success_rate = a.success_rate;
  s.has_interval_one_fraction = a.interval_one_fraction.has_value();
  s.interval_one_fraction = a.interval_one_fraction.value_or(0.0);
  *out_summary = s;
  return succeed();
}

ace_status ace_run_result_summary_table(const ace_run_result* result, const char** out_text) {
  if (result == nullptr) return null_argument("result");
  if (out_text == nullptr) return null_argument("out_text");
  *out_text = result->artifacts.summary_table.c_str();
  return succeed();
}

ace_status ace_truncation_sweep(const ace_config* config, const double* percentages,
                                size_t count, const char* output_path, ace_sweep_row* out_rows) {
  if (config == nullptr) return null_argument("config");
  if (percentages == nullptr) return null_argument("percentages");
  if (out_rows == nullptr) return null_argument("out_rows");
  return guarded([&] {
    std::optional<std::filesystem::path> output;
    if (output_path != nullptr) output = output_path;
    const auto rows = ace::truncation_sweep(
        config->config, std::vector<double>(percentages, percentages + count), output);
    for (size_t i = 0; i < rows.size(); ++i) {
      out_rows[i] = {rows[i].truncation_percentage, rows[i].mean_best_feasible_score.has_value(),
                     rows[i].mean_best_feasible_score.value_or(0.0), rows[i].mean_total_trials,
                     rows[i].success_rate};
    }
  });
}

ace_status ace_scheduler_create(const char* arm_json, double constraint_threshold,
                                int64_t max_time_units, ace_scheduler** out_scheduler) {
  if (arm_json == nullptr) return null_argument("arm_json");
  if (out_scheduler == nullptr) return null_argument("out_scheduler");
  *out_scheduler = nullptr;
  return guarded([&] {
    const ace::ConstraintSpec constraint{constraint_threshold};
    constraint.validate();
    const auto spec = ace::parse_scheduler_spec(arm_json, max_time_units);
    *out_scheduler = new ace_scheduler{ace::make_scheduler(spec, constraint)};
  });
}

void ace_scheduler_free(ace_scheduler* scheduler) { delete scheduler; }

ace_status ace_scheduler_trial_start(ace_scheduler* scheduler, int64_t trial,
                                     int64_t max_iterations, int64_t* out_interval) {
  if (scheduler == nullptr) return null_argument("scheduler");
  if (out_interval == nullptr) return null_argument("out_interval");
  return guarded([&] {
    *out_interval = scheduler->scheduler->on_trial_start(trial, max_iterations).value_or(0);
  });
}

ace_status ace_scheduler_request_constraint(ace_scheduler* scheduler,
                                            const ace_trial_progress* progress,
                                            int* out_evaluate, int64_t* out_checkpoint) {
  if (scheduler == nullptr) return null_argument("scheduler");
  if (progress == nullptr) return null_argument("progress");
  if (out_evaluate == nullptr) return null_argument("out_evaluate");
  if (out_checkpoint == nullptr) return null_argument("out_checkpoint");
  return guarded([&] {
    const auto request = scheduler->scheduler->request_constraint(to_progress(*progress));
    *out_evaluate = request.evaluate ? 1 : 0;
    *out_checkpoint = request.checkpoint;
  });
}

ace_status ace_scheduler_checkpoint(ace_scheduler* scheduler, const ace_trial_progress* progress,
                                    const ace_constraint_observation* observation,
                                    ace_decision* out_decision) {
  if (scheduler == nullptr) return null_argument("scheduler");
  if (progress == nullptr) return null_argument("progress");
  if (out_decision == nullptr) return null_argument("out_decision");
  return guarded([&] {
    std::optional<ace::ConstraintObservation> obs;
    if (observation != nullptr) {
      obs = ace::ConstraintObservation{observation->checkpoint, observation->opt_metric,
                                       observation->value};
    }
    const auto d = scheduler->scheduler->on_checkpoint(to_progress(*progress), obs);
    out_decision->stop = d.action == ace::Action::kStop ? 1 : 0;
    out_decision->evaluate_constraint = d.evaluate_constraint ? 1 : 0;
    out_decision->group = static_cast<ace_group>(static_cast<int>(d.group));
    out_decision->rank = d.rank;
    out_decision->group_size = d.group_size;
  });
}

ace_status ace_scheduler_observe_costs(ace_scheduler* scheduler, double primary_cost,
                                       double constraint_cost) {
  if (scheduler == nullptr) return null_argument("scheduler");
  return guarded([&] {
    if (!(primary_cost >= 0.0) || !(constraint_cost >= 0.0)) {
      throw ace::DomainError("observed costs must be >= 0");
    }
    if (primary_cost > 0.0) scheduler->scheduler->observe_primary_cost(primary_cost);
    if (constraint_cost > 0.0) scheduler->scheduler->observe_constraint_cost(constraint_cost);
  });
}

}  // extern "C"
