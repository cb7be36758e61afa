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

#ifndef ACE_CORE_TRIAL_HISTORY_HPP_
#define ACE_CORE_TRIAL_HISTORY_HPP_

#include <cstdint>
#include <map>
#include <optional>
#include <string_view>
#include <vector>

namespace ace {

using TrialId = std::int64_t;

enum class CheckpointGroup { kNoConstraint, kValid, kInvalid };

std::string_view group_name(CheckpointGroup group);

// Upper-bound constraint g <= threshold.
struct ConstraintSpec {
  double threshold = 0.0;

  void validate() const;
  bool satisfied(double value) const { return value <= threshold; }
};

// One trial's state at one training iteration. Optimization metrics are
// always stored in minimization form.
struct CheckpointRecord {
  TrialId trial_id = 0;
  std::int64_t iteration = 1;
  double opt_metric = 0.0;
  std::optional<double> constraint_value;
  CheckpointGroup group = CheckpointGroup::kNoConstraint;
  std::optional<double> violation_amount;
  double sim_time = 0.0;

  // Builds a record whose group follows from `constraint_value` and `spec`.
  static CheckpointRecord classify(TrialId trial_id, std::int64_t iteration, double opt_metric,
                                   std::optional<double> constraint_value,
                                   const ConstraintSpec& spec, double sim_time = 0.0);
};

// Running sums of primary (per iteration) and constraint (per evaluation)
// cost.
class CostLedger {
 public:
  void add_primary(double cost);
  void add_constraint(double cost);

  double total_primary_cost() const { return total_primary_; }
  std::int64_t primary_cost_count() const { return primary_count_; }
  double total_constraint_cost() const { return total_constraint_; }
  std::int64_t constraint_cost_count() const { return constraint_count_; }

  // Mean constraint cost over mean primary cost; empty until both streams
  // have a sample.
  std::optional<double> cost_ratio() const;

 private:
  double total_primary_ = 0.0;
  std::int64_t primary_count_ = 0;
  double total_constraint_ = 0.0;
  std::int64_t constraint_count_ = 0;
};

// Where a trial currently sits for stratum ranking: the group of its latest
// checkpoint, its best optimization metric so far, and the violation from
// its latest constraint evaluation.
struct TrialStanding {
  CheckpointGroup group = CheckpointGroup::kNoConstraint;
  double best_opt_metric = 0.0;
  std::optional<double> violation_amount;
  std::int64_t last_iteration = 0;
};

// Position of one trial inside its group ranking.
struct GroupRank {
  std::int64_t rank_from_worst = 0;  // 1 is the worst trial in the group
  std::int64_t group_size = 0;
};

// The running history shared by all trials of one tuning run.
class RunningHistory {
 public:
  explicit RunningHistory(ConstraintSpec constraint);

  // Appends `record`; throws InvariantError when the record's group does not
  // match its constraint value.
  void record_checkpoint(const CheckpointRecord& record);

  // All records of `group`, in insertion order. With `latest_per_trial`,
  // only each trial's most recent record in that group is kept.
  std::vector<CheckpointRecord> group_subset(CheckpointGroup group, bool latest_per_trial) const;

  // Rank of `trial` among all trials whose current standing is in `group`.
  // Invalid trials order by (violation, best metric); the other groups by
  // best metric. Full-key ties fall back to trial id. Throws
  // InvariantError when the trial is not currently in `group`.
  GroupRank rank_in_group(TrialId trial, CheckpointGroup group) const;

  // Best metric among feasible records, +inf when there is none.
  double best_feasible_score() const { return best_feasible_score_; }

  const std::vector<CheckpointRecord>& records() const { return records_; }
  const TrialStanding* standing(TrialId trial) const;
  const ConstraintSpec& constraint() const { return constraint_; }

  const CostLedger& ledger() const { return ledger_; }
  CostLedger& ledger() { return ledger_; }

 private:
  ConstraintSpec constraint_;
  std::vector<CheckpointRecord> records_;
  std::map<TrialId, TrialStanding> standings_;
  double best_feasible_score_;
  CostLedger ledger_;
};

}  // namespace ace

#endif  // ACE_CORE_TRIAL_HISTORY_HPP_
