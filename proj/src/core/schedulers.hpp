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

#ifndef ACE_CORE_SCHEDULERS_HPP_
#define ACE_CORE_SCHEDULERS_HPP_

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/trial_history.hpp"

namespace ace {

enum class Action { kContinue, kStop };

std::string_view action_name(Action action);

// Verdict for one checkpoint plus diagnostics for the decision trace.
struct SchedulerDecision {
  Action action = Action::kContinue;
  bool evaluate_constraint = false;
  CheckpointGroup group = CheckpointGroup::kNoConstraint;
  std::int64_t rank = 0;  // rank from worst inside the compared population, 0 if none
  std::int64_t group_size = 0;
};

// What the simulator knows about a running trial after an iteration.
struct TrialProgress {
  TrialId trial = 0;
  std::int64_t iteration = 1;
  std::int64_t max_iterations = 1;
  double opt_metric = 0.0;  // minimization form
  std::int64_t best_iteration = 1;
  double best_opt_metric = 0.0;
  double sim_time = 0.0;
};

// Which checkpoint, if any, to measure the constraint on. `checkpoint` may
// be earlier than the current iteration (final-only evaluation of the
// trial's best checkpoint).
struct ConstraintRequest {
  bool evaluate = false;
  std::int64_t checkpoint = 0;
};

struct ConstraintObservation {
  std::int64_t checkpoint = 0;
  double opt_metric = 0.0;  // metric of the measured checkpoint
  double value = 0.0;
};

// Callback contract between the simulator and a pruning policy. Per
// checkpoint the simulator calls request_constraint, performs the
// evaluation when asked, then calls on_checkpoint. Calls are serialized.
class Scheduler {
 public:
  virtual ~Scheduler() = default;

  virtual std::string_view kind() const = 0;

  // Returns the trial's constraint interval when the policy has one.
  virtual std::optional<std::int64_t> on_trial_start(TrialId trial,
                                                     std::int64_t max_iterations) = 0;
  virtual ConstraintRequest request_constraint(const TrialProgress& progress) = 0;
  virtual SchedulerDecision on_checkpoint(
      const TrialProgress& progress, const std::optional<ConstraintObservation>& observation) = 0;

  virtual void observe_primary_cost(double /*cost*/) {}
  virtual void observe_constraint_cost(double /*cost*/) {}

  // True for constraint-agnostic policies whose best feasible trial must be
  // found by scanning after tuning.
  virtual bool needs_post_hoc_scan() const { return false; }
};

// Number of trials stopped from the bottom of an n-trial group.
std::int64_t truncation_count(double truncation_percentage, std::int64_t group_size);

// ---------------------------------------------------------------------------
// ACE

enum class StoppingMode { kStratum, kHard };
enum class IntervalMode { kAdaptive, kFixedOne, kFixedFull };

struct AceConfig {
  double truncation_percentage = 0.25;
  ConstraintSpec constraint;
  bool low_overhead_gate = true;
  StoppingMode stopping_mode = StoppingMode::kStratum;
  IntervalMode interval_mode = IntervalMode::kAdaptive;

  void validate() const;
};

// Interval assigned when a trial starts. The truncation percentage serves
// as the stop probability.
std::int64_t ace_initial_interval(const AceConfig& config, const RunningHistory& history,
                                  std::int64_t max_iterations);

// Whether to evaluate the constraint at this checkpoint.
bool ace_gate(double opt_metric, const RunningHistory& history, bool at_interval_boundary,
              bool gate_enabled);

struct StratumVerdict {
  Action action = Action::kContinue;
  GroupRank rank;
};

// Stops the trial iff it is among the floor(P * n) worst of its group.
StratumVerdict stratum_should_stop(double truncation_percentage, const RunningHistory& history,
                                   TrialId trial, CheckpointGroup group);

class AceScheduler final : public Scheduler {
 public:
  explicit AceScheduler(AceConfig config);

  std::string_view kind() const override { return "ace"; }
  std::optional<std::int64_t> on_trial_start(TrialId trial, std::int64_t max_iterations) override;
  ConstraintRequest request_constraint(const TrialProgress& progress) override;
  SchedulerDecision on_checkpoint(const TrialProgress& progress,
                                  const std::optional<ConstraintObservation>& observation) override;
  void observe_primary_cost(double cost) override { history_.ledger().add_primary(cost); }
  void observe_constraint_cost(double cost) override { history_.ledger().add_constraint(cost); }

  const RunningHistory& history() const { return history_; }
  RunningHistory& history() { return history_; }
  const AceConfig& config() const { return config_; }
  std::optional<std::int64_t> interval_of(TrialId trial) const;

 private:
  struct TrialState {
    std::int64_t max_iterations = 1;
    std::int64_t interval = 1;
    bool stopped = false;
  };

  TrialState& state_of(TrialId trial);

  AceConfig config_;
  RunningHistory history_;
  std::map<TrialId, TrialState> trials_;
};

// ---------------------------------------------------------------------------
// ASHA (single bracket, promotion on arrival)

struct AshaConfig {
  std::int64_t reduction_factor = 4;
  std::int64_t grace_period = 1;
  std::int64_t max_time_units = 64;
  // Rank inside stratum groups and evaluate constraints at rung boundaries.
  bool stratum_mode = false;
  // With stratum_mode: always evaluate at rungs (true) or let the cost-ratio
  // rule pick between rungs and final-only (false).
  bool constraint_interval_fixed = true;
  // Without stratum_mode: evaluate the constraint on the best checkpoint
  // when a trial ends.
  bool constraint_callback = false;
  ConstraintSpec constraint;

  void validate() const;
  // grace * eta^k for every k with budget <= max_time_units.
  std::vector<std::int64_t> rung_budgets() const;
};

struct RungVerdict {
  Action action = Action::kContinue;
  std::int64_t rank_from_best = 1;
  std::int64_t recorded = 1;
};

// Results recorded at one rung. A trial is promoted iff it ranks inside the
// top ceil(m / eta) of the m results in its comparison group and fewer than
// ceil(m / eta) promotions have been issued in that group.
class AshaRung {
 public:
  RungVerdict arrive(TrialId trial, double opt_metric, CheckpointGroup group,
                     std::optional<double> violation, std::int64_t reduction_factor);

  std::int64_t recorded(CheckpointGroup group) const;
  std::int64_t promoted(CheckpointGroup group) const;

 private:
  struct Entry {
    TrialId trial;
    double opt_metric;
    CheckpointGroup group;
    double violation;
  };
  std::vector<Entry> entries_;
  std::map<CheckpointGroup, std::int64_t> promoted_;
};

class AshaScheduler final : public Scheduler {
 public:
  explicit AshaScheduler(AshaConfig config);

  std::string_view kind() const override { return "asha"; }
  std::optional<std::int64_t> on_trial_start(TrialId trial, std::int64_t max_iterations) override;
  ConstraintRequest request_constraint(const TrialProgress& progress) override;
  SchedulerDecision on_checkpoint(const TrialProgress& progress,
                                  const std::optional<ConstraintObservation>& observation) override;
  void observe_primary_cost(double cost) override { ledger_.add_primary(cost); }
  void observe_constraint_cost(double cost) override { ledger_.add_constraint(cost); }
  bool needs_post_hoc_scan() const override {
    return !config_.stratum_mode && !config_.constraint_callback;
  }

  const AshaConfig& config() const { return config_; }
  const std::vector<std::int64_t>& rungs() const { return rungs_; }
  const AshaRung& rung(std::size_t index) const { return rung_state_.at(index); }

 private:
  struct TrialState {
    std::int64_t max_iterations = 1;
    std::int64_t interval = 1;
    std::optional<RungVerdict> pending;
  };

  std::optional<std::size_t> rung_index(std::int64_t iteration, std::int64_t max_iterations) const;

  AshaConfig config_;
  std::vector<std::int64_t> rungs_;
  std::vector<AshaRung> rung_state_;
  std::map<TrialId, TrialState> trials_;
  CostLedger ledger_;
};

// ---------------------------------------------------------------------------
// No stopping

class NoStoppingScheduler final : public Scheduler {
 public:
  explicit NoStoppingScheduler(bool constraint_callback, ConstraintSpec constraint = {});

  std::string_view kind() const override { return "no_stopping"; }
  std::optional<std::int64_t> on_trial_start(TrialId trial, std::int64_t max_iterations) override;
  ConstraintRequest request_constraint(const TrialProgress& progress) override;
  SchedulerDecision on_checkpoint(const TrialProgress& progress,
                                  const std::optional<ConstraintObservation>& observation) override;
  bool needs_post_hoc_scan() const override { return !constraint_callback_; }

 private:
  bool constraint_callback_;
  ConstraintSpec constraint_;
};

// ---------------------------------------------------------------------------
// Post-hoc feasibility scan

struct ScanCandidate {
  TrialId trial = 0;
  std::int64_t checkpoint = 1;
  double opt_metric = 0.0;
};

struct ScanEvaluation {
  double value = 0.0;
  double cost = 0.0;
};

struct ScanStep {
  ScanCandidate candidate;
  ScanEvaluation evaluation;
  bool feasible = false;
};

struct PostHocResult {
  std::optional<ScanStep> found;  // empty: no feasible trial
  std::vector<ScanStep> steps;
  double extra_cost = 0.0;
};

// Walks `candidates` best-first by (opt_metric, trial) and evaluates the
// constraint on each until the first feasible one.
PostHocResult post_hoc_feasibility_scan(
    std::vector<ScanCandidate> candidates,
    const std::function<ScanEvaluation(const ScanCandidate&)>& evaluate,
    const ConstraintSpec& constraint);

// ---------------------------------------------------------------------------
// Construction from a named arm

enum class SchedulerType { kAce, kAsha, kNoStopping };

struct SchedulerSpec {
  std::string name;
  SchedulerType type = SchedulerType::kAce;
  AceConfig ace;
  AshaConfig asha;
  bool constraint_callback = false;  // no-stopping only
};

// `constraint` overrides whatever threshold the spec carries.
std::unique_ptr<Scheduler> make_scheduler(const SchedulerSpec& spec,
                                          const ConstraintSpec& constraint);

}  // namespace ace

#endif  // ACE_CORE_SCHEDULERS_HPP_
