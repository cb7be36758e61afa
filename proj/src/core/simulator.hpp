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

#ifndef ACE_CORE_SIMULATOR_HPP_
#define ACE_CORE_SIMULATOR_HPP_

#include <cstdint>
#include <optional>
#include <queue>
#include <string_view>
#include <vector>

#include "core/problem.hpp"
#include "core/schedulers.hpp"
#include "core/search_space.hpp"
#include "core/trial_history.hpp"

namespace ace {

// One trial being trained in simulation. Every call charges its cost to the
// shared ledger and advances the trial's local clock by the same amount.
class SimulatedTrial {
 public:
  SimulatedTrial(TrialCurve curve, NoiseKey key, CostLedger& ledger, double start_time);

  // Trains iteration t + 1 and returns its metric (problem sign).
  double train_next();
  // Measures the constraint on the model saved at `checkpoint`.
  double evaluate_constraint(std::int64_t checkpoint);

  std::int64_t iteration() const { return iteration_; }
  double clock() const { return clock_; }
  const TrialCurve& curve() const { return curve_; }
  const NoiseKey& key() const { return key_; }

 private:
  TrialCurve curve_;
  NoiseKey key_;
  CostLedger* ledger_;
  std::int64_t iteration_ = 0;
  double clock_;
};

// Pending event ordered by (time, sequence number).
struct SimEvent {
  double time = 0.0;
  std::uint64_t sequence = 0;
  std::size_t slot = 0;
  bool constraint = false;  // false: an iteration finished

  bool operator>(const SimEvent& other) const {
    return time != other.time ? time > other.time : sequence > other.sequence;
  }
};

class EventQueue {
 public:
  void push(double time, std::size_t slot, bool constraint);
  SimEvent pop();
  bool empty() const { return queue_.empty(); }
  double now() const { return now_; }

 private:
  std::priority_queue<SimEvent, std::vector<SimEvent>, std::greater<>> queue_;
  std::uint64_t next_sequence_ = 0;
  double now_ = 0.0;
};

enum class RowKind { kContinue, kStop, kComplete, kPostHoc };

std::string_view row_kind_name(RowKind kind);

// One checkpoint (or post-hoc evaluation) of the run. Metric columns are in
// the problem's own sign.
struct TraceRow {
  TrialId trial = 0;
  std::int64_t iteration = 0;
  // Metric of the record: the measured checkpoint's when a constraint was
  // evaluated, otherwise this iteration's.
  double opt_metric = 0.0;
  std::optional<double> constraint_value;
  CheckpointGroup group = CheckpointGroup::kNoConstraint;
  std::optional<double> violation_amount;
  double sim_time = 0.0;
  RowKind kind = RowKind::kContinue;
  bool evaluate_constraint = false;
  std::int64_t rank = 0;
  std::int64_t group_size = 0;
  std::optional<std::int64_t> interval;
  std::optional<std::int64_t> constraint_checkpoint;
  double iteration_metric = 0.0;
  double primary_cost = 0.0;
  double constraint_cost = 0.0;
};

struct SimulationOptions {
  double budget = 1000.0;  // simulated seconds on the run clock
  std::int64_t max_concurrent = 4;
  std::uint64_t seed = 0;  // search seed
};

struct ExperimentReport {
  bool feasible_found = false;
  std::optional<double> best_feasible_score;  // problem sign
  std::optional<double> time_to_best;
  std::optional<TrialId> best_trial;
  std::int64_t total_trials = 0;
  std::int64_t interval_one = 0;
  std::int64_t interval_full = 0;
  std::int64_t constraint_evaluations = 0;
  std::int64_t post_hoc_evaluations = 0;
  bool post_hoc_scan = false;
  double total_primary_cost = 0.0;
  double total_constraint_cost = 0.0;
  double elapsed = 0.0;  // run clock at the last event, plus post-hoc time
  std::optional<double> measured_cost_ratio;
  std::vector<std::int64_t> started_configurations;
  std::vector<TraceRow> trace;
};

// Runs one tuning experiment: keeps up to max_concurrent trials in flight,
// drawing configurations from the seed's stream, until the run clock reaches
// the budget. Work in flight at the budget completes.
ExperimentReport run_experiment(const Problem& problem, const SearchSpace& space,
                                Scheduler& scheduler, const SimulationOptions& options);

}  // namespace ace

#endif  // ACE_CORE_SIMULATOR_HPP_
