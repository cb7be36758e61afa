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

#include "core/simulator.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <string>

#include "core/errors.hpp"

namespace ace {

SimulatedTrial::SimulatedTrial(TrialCurve curve, NoiseKey key, CostLedger& ledger,
                               double start_time)
    : curve_(curve), key_(key), ledger_(&ledger), clock_(start_time) {
  curve_.validate();
}

double SimulatedTrial::train_next() {
  if (iteration_ >= curve_.max_iterations) throw DomainError("trial already at max_iterations");
  ++iteration_;
  const double value = opt_metric_at(curve_, iteration_, key_);
  ledger_->add_primary(curve_.primary_cost);
  clock_ += curve_.primary_cost;
  return value;
}

double SimulatedTrial::evaluate_constraint(std::int64_t checkpoint) {
  if (checkpoint < 1 || checkpoint > iteration_) {
    throw DomainError("constraint checkpoint " + std::to_string(checkpoint) +
                      " has not been trained");
  }
  const double value = constraint_metric_at(curve_, checkpoint, key_);
  ledger_->add_constraint(curve_.constraint_cost);
  clock_ += curve_.constraint_cost;
  return value;
}

void EventQueue::push(double time, std::size_t slot, bool constraint) {
  if (time < now_) throw InvariantError("event scheduled in the past");
  queue_.push({time, next_sequence_++, slot, constraint});
}

SimEvent EventQueue::pop() {
  SimEvent event = queue_.top();
  queue_.pop();
  now_ = event.time;
  return event;
}

std::string_view row_kind_name(RowKind kind) {
  switch (kind) {
    case RowKind::kContinue:
      return "continue";
    case RowKind::kStop:
      return "stop";
    case RowKind::kComplete:
      return "complete";
    case RowKind::kPostHoc:
      return "posthoc";
  }
  return "unknown";
}

namespace {

struct RunningTrial {
  TrialId id = 0;
  std::unique_ptr<SimulatedTrial> sim;
  std::optional<std::int64_t> interval;
  double current_internal = 0.0;
  double current_metric = 0.0;
  std::int64_t best_iteration = 0;
  double best_internal = std::numeric_limits<double>::infinity();
  std::vector<double> metrics;  // problem sign, index t - 1
  ConstraintRequest pending;
};

struct FinishedTrial {
  TrialId id = 0;
  TrialCurve curve;
  NoiseKey key;
  std::int64_t best_iteration = 0;
  double best_internal = 0.0;
};

class Simulation {
 public:
  Simulation(const Problem& problem, const SearchSpace& space, Scheduler& scheduler,
             const SimulationOptions& options)
      : problem_(problem),
        space_(space),
        scheduler_(scheduler),
        options_(options),
        constraint_(problem.constraint()),
        slots_(static_cast<std::size_t>(options.max_concurrent)) {}

  ExperimentReport run() {
    for (std::size_t slot = 0; slot < slots_.size(); ++slot) start_trial(slot, 0.0);
    while (!queue_.empty()) {
      const SimEvent event = queue_.pop();
      if (event.constraint) {
        finish_constraint(event.slot);
      } else {
        finish_iteration(event.slot);
      }
    }
    for (auto& slot : slots_) {
      if (slot) retire(*slot);
    }
    report_.elapsed = queue_.now();
    if (scheduler_.needs_post_hoc_scan()) post_hoc_scan();
    summarize();
    return std::move(report_);
  }

 private:
  TrialProgress progress_of(const RunningTrial& trial) const {
    TrialProgress p;
    p.trial = trial.id;
    p.iteration = trial.sim->iteration();
    p.max_iterations = trial.sim->curve().max_iterations;
    p.opt_metric = trial.current_internal;
    p.best_iteration = trial.best_iteration;
    p.best_opt_metric = trial.best_internal;
    p.sim_time = queue_.now();
    return p;
  }

  void start_trial(std::size_t slot, double now) {
    if (!(now < options_.budget)) return;
    const TrialId id = next_trial_++;
    const Configuration config = configuration_at(space_, options_.seed, id);
    const TrialCurve curve = problem_.curve_for(config, space_);
    const NoiseKey key{problem_.settings().seed, options_.seed, id};

    RunningTrial trial;
    trial.id = id;
    trial.sim = std::make_unique<SimulatedTrial>(curve, key, ledger_, now);
    trial.interval = scheduler_.on_trial_start(id, curve.max_iterations);
    report_.started_configurations.push_back(config.index);
    if (trial.interval) {
      if (*trial.interval == 1) {
        ++report_.interval_one;
      } else if (*trial.interval == curve.max_iterations) {
        ++report_.interval_full;
      }
    }
    slots_[slot] = std::move(trial);
    queue_.push(now + curve.primary_cost, slot, false);
  }

  void finish_iteration(std::size_t slot) {
    RunningTrial& trial = *slots_[slot];
    const double metric = trial.sim->train_next();
    scheduler_.observe_primary_cost(trial.sim->curve().primary_cost);
    trial.metrics.push_back(metric);
    trial.current_metric = metric;
    trial.current_internal = problem_.to_internal(metric);
    if (trial.current_internal < trial.best_internal) {
      trial.best_internal = trial.current_internal;
      trial.best_iteration = trial.sim->iteration();
    }
    trial.pending = scheduler_.request_constraint(progress_of(trial));
    if (trial.pending.evaluate) {
      queue_.push(queue_.now() + trial.sim->curve().constraint_cost, slot, true);
    } else {
      conclude(slot, std::nullopt);
    }
  }

  void finish_constraint(std::size_t slot) {
    RunningTrial& trial = *slots_[slot];
    const std::int64_t checkpoint = trial.pending.checkpoint;
    const double value = trial.sim->evaluate_constraint(checkpoint);
    scheduler_.observe_constraint_cost(trial.sim->curve().constraint_cost);
    ConstraintObservation observation;
    observation.checkpoint = checkpoint;
    observation.opt_metric =
        problem_.to_internal(trial.metrics[static_cast<std::size_t>(checkpoint - 1)]);
    observation.value = value;
    conclude(slot, observation);
  }

  void conclude(std::size_t slot, const std::optional<ConstraintObservation>& observation) {
    RunningTrial& trial = *slots_[slot];
    const TrialProgress progress = progress_of(trial);
    const SchedulerDecision decision = scheduler_.on_checkpoint(progress, observation);

    const bool complete = progress.iteration >= progress.max_iterations;
    TraceRow row;
    row.trial = trial.id;
    row.iteration = progress.iteration;
    row.iteration_metric = trial.current_metric;
    row.opt_metric =
        observation ? problem_.from_internal(observation->opt_metric) : trial.current_metric;
    row.sim_time = queue_.now();
    row.kind = complete ? RowKind::kComplete
                        : (decision.action == Action::kStop ? RowKind::kStop : RowKind::kContinue);
    row.evaluate_constraint = observation.has_value();
    row.rank = decision.rank;
    row.group_size = decision.group_size;
    row.interval = trial.interval;
    row.primary_cost = trial.sim->curve().primary_cost;
    if (observation) {
      const CheckpointRecord record =
          CheckpointRecord::classify(trial.id, progress.iteration, observation->opt_metric,
                                     observation->value, constraint_, row.sim_time);
      row.constraint_value = observation->value;
      row.group = record.group;
      row.violation_amount = record.violation_amount;
      row.constraint_checkpoint = observation->checkpoint;
      row.constraint_cost = trial.sim->curve().constraint_cost;
    }
    append(std::move(row));

    if (complete || decision.action == Action::kStop || !(queue_.now() < options_.budget)) {
      retire(trial);
      slots_[slot].reset();
      start_trial(slot, queue_.now());
      return;
    }
    queue_.push(queue_.now() + trial.sim->curve().primary_cost, slot, false);
  }

  void append(TraceRow row) {
    report_.total_primary_cost += row.primary_cost;
    report_.total_constraint_cost += row.constraint_cost;
    report_.trace.push_back(std::move(row));
  }

  void retire(RunningTrial& trial) {
    if (trial.sim->iteration() == 0) return;
    finished_.push_back({trial.id, trial.sim->curve(), trial.sim->key(), trial.best_iteration,
                         trial.best_internal});
  }

  void post_hoc_scan() {
    report_.post_hoc_scan = true;
    std::vector<ScanCandidate> candidates;
    for (const auto& f : finished_) candidates.push_back({f.id, f.best_iteration, f.best_internal});
    double clock = report_.elapsed;
    auto evaluate = [&](const ScanCandidate& c) {
      const FinishedTrial& f = *std::find_if(finished_.begin(), finished_.end(),
                                             [&](const FinishedTrial& x) { return x.id == c.trial; });
      ScanEvaluation e{constraint_metric_at(f.curve, c.checkpoint, f.key), f.curve.constraint_cost};
      ledger_.add_constraint(e.cost);
      clock += e.cost;
      TraceRow row;
      row.trial = c.trial;
      row.iteration = c.checkpoint;
      row.opt_metric = problem_.from_internal(c.opt_metric);
      row.iteration_metric = row.opt_metric;
      row.constraint_value = e.value;
      const CheckpointRecord record = CheckpointRecord::classify(
          c.trial, c.checkpoint, c.opt_metric, e.value, constraint_, clock);
      row.group = record.group;
      row.violation_amount = record.violation_amount;
      row.sim_time = clock;
      row.kind = RowKind::kPostHoc;
      row.evaluate_constraint = true;
      row.constraint_checkpoint = c.checkpoint;
      row.constraint_cost = e.cost;
      append(std::move(row));
      return e;
    };
    const PostHocResult result = post_hoc_feasibility_scan(candidates, evaluate, constraint_);
    report_.post_hoc_evaluations = static_cast<std::int64_t>(result.steps.size());
    report_.elapsed = clock;
  }

  void summarize() {
    report_.total_trials = next_trial_;
    report_.measured_cost_ratio = ledger_.cost_ratio();
    double best = std::numeric_limits<double>::infinity();
    for (const TraceRow& row : report_.trace) {
      if (row.constraint_value) ++report_.constraint_evaluations;
      if (row.group != CheckpointGroup::kValid) continue;
      const double internal = problem_.to_internal(row.opt_metric);
      if (internal < best) {
        best = internal;
        report_.best_feasible_score = row.opt_metric;
        report_.time_to_best = row.sim_time;
        report_.best_trial = row.trial;
      }
    }
    report_.feasible_found = report_.best_feasible_score.has_value();
  }

  const Problem& problem_;
  const SearchSpace& space_;
  Scheduler& scheduler_;
  SimulationOptions options_;
  ConstraintSpec constraint_;

  EventQueue queue_;
  CostLedger ledger_;
  std::vector<std::optional<RunningTrial>> slots_;
  std::vector<FinishedTrial> finished_;
  TrialId next_trial_ = 0;
  ExperimentReport report_;
};

}  // namespace

ExperimentReport run_experiment(const Problem& problem, const SearchSpace& space,
                                Scheduler& scheduler, const SimulationOptions& options) {
  if (!(options.budget > 0.0) || !std::isfinite(options.budget)) {
    throw DomainError("budget must be finite and > 0");
  }
  if (options.max_concurrent < 1) throw DomainError("max_concurrent must be >= 1");
  space.validate();
  return Simulation(problem, space, scheduler, options).run();
}

}  // namespace ace
