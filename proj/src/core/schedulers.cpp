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

#include "core/schedulers.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <tuple>

#include "core/cost_model.hpp"
#include "core/errors.hpp"

namespace ace {

std::string_view action_name(Action action) {
  return action == Action::kStop ? "stop" : "continue";
}

std::int64_t truncation_count(double truncation_percentage, std::int64_t group_size) {
  return static_cast<std::int64_t>(
      std::floor(truncation_percentage * static_cast<double>(group_size) + 1e-9));
}

// ---------------------------------------------------------------------------
// ACE

void AceConfig::validate() const {
  if (!(truncation_percentage > 0.0 && truncation_percentage < 1.0)) {
    throw DomainError("truncation_percentage must lie in (0, 1)");
  }
  constraint.validate();
}

std::int64_t ace_initial_interval(const AceConfig& config, const RunningHistory& history,
                                  std::int64_t max_iterations) {
  if (max_iterations < 1) throw DomainError("max_iterations must be >= 1");
  switch (config.interval_mode) {
    case IntervalMode::kFixedOne:
      return 1;
    case IntervalMode::kFixedFull:
      return max_iterations;
    case IntervalMode::kAdaptive:
      break;
  }
  // Until a cost ratio exists, assume the constraint is expensive.
  const auto ratio = history.ledger().cost_ratio();
  if (!ratio) return max_iterations;
  return choose_interval(*ratio, config.truncation_percentage, max_iterations);
}

bool ace_gate(double opt_metric, const RunningHistory& history, bool at_interval_boundary,
              bool gate_enabled) {
  if (!at_interval_boundary) return false;
  return !gate_enabled || opt_metric <= history.best_feasible_score();
}

StratumVerdict stratum_should_stop(double truncation_percentage, const RunningHistory& history,
                                   TrialId trial, CheckpointGroup group) {
  StratumVerdict verdict;
  verdict.rank = history.rank_in_group(trial, group);
  const std::int64_t cut = truncation_count(truncation_percentage, verdict.rank.group_size);
  verdict.action = verdict.rank.rank_from_worst <= cut ? Action::kStop : Action::kContinue;
  return verdict;
}

AceScheduler::AceScheduler(AceConfig config) : config_(config), history_(config.constraint) {
  config_.validate();
}

std::optional<std::int64_t> AceScheduler::interval_of(TrialId trial) const {
  auto it = trials_.find(trial);
  if (it == trials_.end()) return std::nullopt;
  return it->second.interval;
}

AceScheduler::TrialState& AceScheduler::state_of(TrialId trial) {
  auto it = trials_.find(trial);
  if (it == trials_.end()) {
    throw InvariantError("trial " + std::to_string(trial) + " was never started");
  }
  return it->second;
}

std::optional<std::int64_t> AceScheduler::on_trial_start(TrialId trial,
                                                         std::int64_t max_iterations) {
  const std::int64_t interval = ace_initial_interval(config_, history_, max_iterations);
  auto [it, inserted] = trials_.try_emplace(trial, TrialState{max_iterations, interval, false});
  if (!inserted) throw InvariantError("trial " + std::to_string(trial) + " started twice");
  return interval;
}

ConstraintRequest AceScheduler::request_constraint(const TrialProgress& progress) {
  const TrialState& state = state_of(progress.trial);
  const std::int64_t t = progress.iteration;
  // A single end-of-training check measures the trial's best checkpoint.
  const bool final_only = state.interval == state.max_iterations && state.max_iterations > 1;
  const std::int64_t checkpoint = final_only ? progress.best_iteration : t;
  const double gate_metric = final_only ? progress.best_opt_metric : progress.opt_metric;

  const bool boundary = t % state.interval == 0;
  bool evaluate = ace_gate(gate_metric, history_, boundary, config_.low_overhead_gate);

  // Bootstrap: the first trial to finish with no constraint sample on record
  // is measured anyway.
  if (!evaluate && t == state.max_iterations && config_.interval_mode == IntervalMode::kAdaptive &&
      config_.low_overhead_gate && history_.ledger().constraint_cost_count() == 0) {
    return {true, progress.best_iteration};
  }
  return {evaluate, evaluate ? checkpoint : 0};
}

SchedulerDecision AceScheduler::on_checkpoint(
    const TrialProgress& progress, const std::optional<ConstraintObservation>& observation) {
  TrialState& state = state_of(progress.trial);
  if (state.stopped) throw InvariantError("checkpoint reported for a stopped trial");

  const double opt = observation ? observation->opt_metric : progress.opt_metric;
  const std::optional<double> value =
      observation ? std::optional<double>(observation->value) : std::nullopt;
  const CheckpointRecord record = CheckpointRecord::classify(
      progress.trial, progress.iteration, opt, value, history_.constraint(), progress.sim_time);
  history_.record_checkpoint(record);

  SchedulerDecision decision;
  decision.evaluate_constraint = observation.has_value();
  decision.group = record.group;

  const StratumVerdict verdict = stratum_should_stop(config_.truncation_percentage, history_,
                                                     progress.trial, record.group);
  decision.rank = verdict.rank.rank_from_worst;
  decision.group_size = verdict.rank.group_size;

  if (progress.iteration >= state.max_iterations) {
    decision.action = Action::kContinue;  // completes
  } else if (config_.stopping_mode == StoppingMode::kHard &&
             record.group == CheckpointGroup::kInvalid) {
    decision.action = Action::kStop;
  } else {
    decision.action = verdict.action;
  }
  if (decision.action == Action::kStop) state.stopped = true;
  return decision;
}

// ---------------------------------------------------------------------------
// ASHA

void AshaConfig::validate() const {
  if (reduction_factor < 2) throw DomainError("reduction_factor must be >= 2");
  if (grace_period < 1) throw DomainError("grace_period must be >= 1");
  if (max_time_units < grace_period) throw DomainError("max_time_units must be >= grace_period");
  constraint.validate();
}

std::vector<std::int64_t> AshaConfig::rung_budgets() const {
  std::vector<std::int64_t> budgets;
  for (std::int64_t b = grace_period; b <= max_time_units; b *= reduction_factor) {
    budgets.push_back(b);
  }
  return budgets;
}

RungVerdict AshaRung::arrive(TrialId trial, double opt_metric, CheckpointGroup group,
                             std::optional<double> violation, std::int64_t reduction_factor) {
  const double v = group == CheckpointGroup::kInvalid ? violation.value_or(0.0) : 0.0;
  entries_.push_back({trial, opt_metric, group, v});
  auto key = [](const Entry& e) { return std::make_tuple(e.violation, e.opt_metric, e.trial); };
  const auto self = key(entries_.back());

  RungVerdict verdict;
  verdict.recorded = 0;
  verdict.rank_from_best = 1;
  for (const Entry& e : entries_) {
    if (e.group != group) continue;
    ++verdict.recorded;
    if (key(e) < self) ++verdict.rank_from_best;
  }
  const std::int64_t quota = (verdict.recorded + reduction_factor - 1) / reduction_factor;
  std::int64_t& issued = promoted_[group];
  if (verdict.rank_from_best <= quota && issued < quota) {
    ++issued;
    verdict.action = Action::kContinue;
  } else {
    verdict.action = Action::kStop;
  }
  return verdict;
}

std::int64_t AshaRung::recorded(CheckpointGroup group) const {
  return std::count_if(entries_.begin(), entries_.end(),
                       [group](const Entry& e) { return e.group == group; });
}

std::int64_t AshaRung::promoted(CheckpointGroup group) const {
  auto it = promoted_.find(group);
  return it == promoted_.end() ? 0 : it->second;
}

AshaScheduler::AshaScheduler(AshaConfig config) : config_(config) {
  config_.validate();
  rungs_ = config_.rung_budgets();
  rung_state_.resize(rungs_.size());
}

std::optional<std::size_t> AshaScheduler::rung_index(std::int64_t iteration,
                                                     std::int64_t max_iterations) const {
  if (iteration >= max_iterations) return std::nullopt;
  auto it = std::find(rungs_.begin(), rungs_.end(), iteration);
  if (it == rungs_.end()) return std::nullopt;
  return static_cast<std::size_t>(it - rungs_.begin());
}

std::optional<std::int64_t> AshaScheduler::on_trial_start(TrialId trial,
                                                          std::int64_t max_iterations) {
  if (max_iterations < 1) throw DomainError("max_iterations must be >= 1");
  TrialState state;
  state.max_iterations = max_iterations;
  std::optional<std::int64_t> reported;
  if (config_.stratum_mode && !config_.constraint_interval_fixed) {
    // The linear-interval rule, borrowed with ASHA's per-rung stop fraction
    // 1 - 1/eta as the stop probability.
    const auto ratio = ledger_.cost_ratio();
    const double p = 1.0 - 1.0 / static_cast<double>(config_.reduction_factor);
    state.interval = ratio ? choose_interval(*ratio, p, max_iterations) : max_iterations;
    reported = state.interval;
  } else if (config_.stratum_mode) {
    state.interval = 1;
  } else if (config_.constraint_callback) {
    state.interval = max_iterations;
    reported = state.interval;
  } else {
    state.interval = max_iterations;
  }
  if (!trials_.try_emplace(trial, state).second) {
    throw InvariantError("trial " + std::to_string(trial) + " started twice");
  }
  return reported;
}

ConstraintRequest AshaScheduler::request_constraint(const TrialProgress& progress) {
  auto it = trials_.find(progress.trial);
  if (it == trials_.end()) throw InvariantError("unknown trial");
  TrialState& state = it->second;
  const std::int64_t t = progress.iteration;
  const bool final_iteration = t >= state.max_iterations;
  const auto rung = rung_index(t, state.max_iterations);

  if (!config_.stratum_mode) {
    state.pending.reset();
    if (rung) {
      state.pending = rung_state_[*rung].arrive(progress.trial, progress.opt_metric,
                                                CheckpointGroup::kNoConstraint, std::nullopt,
                                                config_.reduction_factor);
    }
    const bool ends = final_iteration || (state.pending && state.pending->action == Action::kStop);
    if (config_.constraint_callback && ends) return {true, progress.best_iteration};
    return {};
  }

  const bool full_interval = !config_.constraint_interval_fixed &&
                             state.interval == state.max_iterations && state.max_iterations > 1;
  if (full_interval) {
    if (final_iteration) return {true, progress.best_iteration};
    return {};
  }
  if (rung) return {true, t};
  return {};
}

SchedulerDecision AshaScheduler::on_checkpoint(
    const TrialProgress& progress, const std::optional<ConstraintObservation>& observation) {
  auto it = trials_.find(progress.trial);
  if (it == trials_.end()) throw InvariantError("unknown trial");
  TrialState& state = it->second;

  SchedulerDecision decision;
  decision.evaluate_constraint = observation.has_value();
  if (observation) {
    decision.group = config_.constraint.satisfied(observation->value) ? CheckpointGroup::kValid
                                                                      : CheckpointGroup::kInvalid;
  }

  std::optional<RungVerdict> verdict;
  if (!config_.stratum_mode) {
    verdict = state.pending;
    state.pending.reset();
  } else if (const auto rung = rung_index(progress.iteration, state.max_iterations)) {
    std::optional<double> violation;
    if (decision.group == CheckpointGroup::kInvalid) {
      violation = observation->value - config_.constraint.threshold;
    }
    const double opt = observation ? observation->opt_metric : progress.opt_metric;
    verdict = rung_state_[*rung].arrive(progress.trial, opt, decision.group, violation,
                                        config_.reduction_factor);
  }
  if (verdict) {
    decision.action = verdict->action;
    decision.rank = verdict->recorded - verdict->rank_from_best + 1;
    decision.group_size = verdict->recorded;
  }
  return decision;
}

// ---------------------------------------------------------------------------
// No stopping

NoStoppingScheduler::NoStoppingScheduler(bool constraint_callback, ConstraintSpec constraint)
    : constraint_callback_(constraint_callback), constraint_(constraint) {
  constraint_.validate();
}

std::optional<std::int64_t> NoStoppingScheduler::on_trial_start(TrialId /*trial*/,
                                                                std::int64_t max_iterations) {
  if (max_iterations < 1) throw DomainError("max_iterations must be >= 1");
  if (constraint_callback_) return max_iterations;
  return std::nullopt;
}

ConstraintRequest NoStoppingScheduler::request_constraint(const TrialProgress& progress) {
  if (constraint_callback_ && progress.iteration >= progress.max_iterations) {
    return {true, progress.best_iteration};
  }
  return {};
}

SchedulerDecision NoStoppingScheduler::on_checkpoint(
    const TrialProgress& /*progress*/, const std::optional<ConstraintObservation>& observation) {
  SchedulerDecision decision;
  decision.evaluate_constraint = observation.has_value();
  if (observation) {
    decision.group = constraint_.satisfied(observation->value) ? CheckpointGroup::kValid
                                                               : CheckpointGroup::kInvalid;
  }
  return decision;
}

// ---------------------------------------------------------------------------
// Post-hoc scan

PostHocResult post_hoc_feasibility_scan(
    std::vector<ScanCandidate> candidates,
    const std::function<ScanEvaluation(const ScanCandidate&)>& evaluate,
    const ConstraintSpec& constraint) {
  std::stable_sort(candidates.begin(), candidates.end(),
                   [](const ScanCandidate& a, const ScanCandidate& b) {
                     return std::tie(a.opt_metric, a.trial) < std::tie(b.opt_metric, b.trial);
                   });
  PostHocResult result;
  for (const ScanCandidate& candidate : candidates) {
    ScanStep step{candidate, evaluate(candidate), false};
    step.feasible = constraint.satisfied(step.evaluation.value);
    result.extra_cost += step.evaluation.cost;
    result.steps.push_back(step);
    if (step.feasible) {
      result.found = step;
      break;
    }
  }
  return result;
}

// ---------------------------------------------------------------------------

std::unique_ptr<Scheduler> make_scheduler(const SchedulerSpec& spec,
                                          const ConstraintSpec& constraint) {
  switch (spec.type) {
    case SchedulerType::kAce: {
      AceConfig config = spec.ace;
      config.constraint = constraint;
      return std::make_unique<AceScheduler>(config);
    }
    case SchedulerType::kAsha: {
      AshaConfig config = spec.asha;
      config.constraint = constraint;
      return std::make_unique<AshaScheduler>(config);
    }
    case SchedulerType::kNoStopping:
      return std::make_unique<NoStoppingScheduler>(spec.constraint_callback, constraint);
  }
  throw InvariantError("unknown scheduler type");
}

}  // namespace ace
