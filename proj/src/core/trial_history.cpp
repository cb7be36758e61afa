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

#include "core/trial_history.hpp"

#include <cmath>
#include <limits>
#include <set>
#include <string>
#include <tuple>

#include "core/errors.hpp"

namespace ace {

std::string_view group_name(CheckpointGroup group) {
  switch (group) {
    case CheckpointGroup::kNoConstraint:
      return "no_constraint";
    case CheckpointGroup::kValid:
      return "valid";
    case CheckpointGroup::kInvalid:
      return "invalid";
  }
  return "unknown";
}

void ConstraintSpec::validate() const {
  if (!std::isfinite(threshold)) throw DomainError("constraint threshold must be finite");
}

CheckpointRecord CheckpointRecord::classify(TrialId trial_id, std::int64_t iteration,
                                            double opt_metric,
                                            std::optional<double> constraint_value,
                                            const ConstraintSpec& spec, double sim_time) {
  CheckpointRecord record;
  record.trial_id = trial_id;
  record.iteration = iteration;
  record.opt_metric = opt_metric;
  record.constraint_value = constraint_value;
  record.sim_time = sim_time;
  if (!constraint_value) {
    record.group = CheckpointGroup::kNoConstraint;
  } else if (spec.satisfied(*constraint_value)) {
    record.group = CheckpointGroup::kValid;
  } else {
    record.group = CheckpointGroup::kInvalid;
    record.violation_amount = *constraint_value - spec.threshold;
  }
  return record;
}

void CostLedger::add_primary(double cost) {
  if (!(cost >= 0.0)) throw DomainError("primary cost must be >= 0");
  total_primary_ += cost;
  ++primary_count_;
}

void CostLedger::add_constraint(double cost) {
  if (!(cost >= 0.0)) throw DomainError("constraint cost must be >= 0");
  total_constraint_ += cost;
  ++constraint_count_;
}

std::optional<double> CostLedger::cost_ratio() const {
  if (primary_count_ == 0 || constraint_count_ == 0 || total_primary_ <= 0.0) {
    return std::nullopt;
  }
  const double mean_constraint = total_constraint_ / static_cast<double>(constraint_count_);
  const double mean_primary = total_primary_ / static_cast<double>(primary_count_);
  return mean_constraint / mean_primary;
}

RunningHistory::RunningHistory(ConstraintSpec constraint)
    : constraint_(constraint), best_feasible_score_(std::numeric_limits<double>::infinity()) {
  constraint_.validate();
}

void RunningHistory::record_checkpoint(const CheckpointRecord& record) {
  if (record.iteration < 1) throw InvariantError("checkpoint iteration must be >= 1");
  if (std::isnan(record.opt_metric)) throw InvariantError("optimization metric is NaN");
  switch (record.group) {
    case CheckpointGroup::kNoConstraint:
      if (record.constraint_value || record.violation_amount) {
        throw InvariantError("no_constraint record carries a constraint value");
      }
      break;
    case CheckpointGroup::kValid:
      if (!record.constraint_value || !constraint_.satisfied(*record.constraint_value)) {
        throw InvariantError("valid record must carry a constraint value <= threshold");
      }
      break;
    case CheckpointGroup::kInvalid: {
      if (!record.constraint_value || constraint_.satisfied(*record.constraint_value)) {
        throw InvariantError("invalid record must carry a constraint value > threshold");
      }
      const double expected = *record.constraint_value - constraint_.threshold;
      if (!record.violation_amount || *record.violation_amount != expected) {
        throw InvariantError("invalid record violation must equal value - threshold");
      }
      break;
    }
  }

  records_.push_back(record);

  auto [it, inserted] = standings_.try_emplace(record.trial_id);
  TrialStanding& standing = it->second;
  standing.group = record.group;
  standing.best_opt_metric =
      inserted ? record.opt_metric : std::min(standing.best_opt_metric, record.opt_metric);
  if (record.group != CheckpointGroup::kNoConstraint) {
    standing.violation_amount = record.violation_amount;
  }
  standing.last_iteration = record.iteration;

  if (record.group == CheckpointGroup::kValid && record.opt_metric < best_feasible_score_) {
    best_feasible_score_ = record.opt_metric;
  }
}

std::vector<CheckpointRecord> RunningHistory::group_subset(CheckpointGroup group,
                                                           bool latest_per_trial) const {
  std::vector<CheckpointRecord> out;
  if (!latest_per_trial) {
    for (const auto& record : records_) {
      if (record.group == group) out.push_back(record);
    }
    return out;
  }
  // Walk backwards so the first hit per trial is its latest, then restore
  // insertion order.
  std::set<TrialId> seen;
  for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
    if (it->group == group && seen.insert(it->trial_id).second) out.push_back(*it);
  }
  return {out.rbegin(), out.rend()};
}

const TrialStanding* RunningHistory::standing(TrialId trial) const {
  auto it = standings_.find(trial);
  return it == standings_.end() ? nullptr : &it->second;
}

GroupRank RunningHistory::rank_in_group(TrialId trial, CheckpointGroup group) const {
  const TrialStanding* self = standing(trial);
  if (self == nullptr || self->group != group) {
    throw InvariantError("trial " + std::to_string(trial) + " is not in group " +
                         std::string(group_name(group)));
  }
  auto key = [group](TrialId id, const TrialStanding& s) {
    const double violation =
        group == CheckpointGroup::kInvalid ? s.violation_amount.value_or(0.0) : 0.0;
    return std::make_tuple(violation, s.best_opt_metric, id);
  };
  const auto self_key = key(trial, *self);

  GroupRank rank;
  rank.rank_from_worst = 1;
  for (const auto& [id, s] : standings_) {
    if (s.group != group) continue;
    ++rank.group_size;
    if (self_key < key(id, s)) ++rank.rank_from_worst;
  }
  return rank;
}

}  // namespace ace
