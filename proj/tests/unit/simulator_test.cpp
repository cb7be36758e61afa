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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <sstream>

#include "core/errors.hpp"
#include "core/experiment.hpp"

namespace ace {
namespace {

TrialCurve clean_curve() {
  TrialCurve c;
  c.opt_start = 1.0;
  c.opt_asymptote = 0.0;
  c.opt_rate = std::numbers::ln2;
  c.constraint_start = 0.5;
  c.constraint_asymptote = 0.2;
  c.constraint_rate = 0.3;
  c.primary_cost = 1.5;
  c.constraint_cost = 4.0;
  c.max_iterations = 50;
  return c;
}

TEST(Curves, OptMetricMatchesFormula) {
  const TrialCurve c = clean_curve();
  EXPECT_DOUBLE_EQ(opt_metric_at(c, 1, {}), 0.5);
  EXPECT_DOUBLE_EQ(opt_metric_at(c, 2, {}), 0.25);
  EXPECT_NEAR(opt_metric_at(c, 50, {}), 0.0, 1e-14);
}

TEST(Curves, ConstraintApproachesBase) {
  TrialCurve c = clean_curve();
  c.constraint_rate = 2.0;
  EXPECT_NEAR(constraint_metric_at(c, 50, {}), 0.2, 1e-12);
}

TEST(Curves, OscillationCrossesThresholdRepeatedly) {
  TrialCurve c = clean_curve();
  c.constraint_start = c.constraint_asymptote;
  c.oscillation_amplitude = 0.05;
  c.oscillation_period = 8.0;
  const ConstraintSpec spec{0.22};  // g_inf < threshold < g_inf + a
  int flips = 0;
  bool previous = spec.satisfied(constraint_metric_at(c, 1, {}));
  for (std::int64_t t = 2; t <= c.max_iterations; ++t) {
    const bool now = spec.satisfied(constraint_metric_at(c, t, {}));
    flips += now != previous;
    previous = now;
  }
  EXPECT_GE(flips, 4);
  EXPECT_TRUE(ever_feasible(c, spec));
}

TEST(Curves, NoiseIsKeyedAndReproducible) {
  TrialCurve c = clean_curve();
  c.opt_noise = 0.01;
  const NoiseKey a{7, 1, 3}, b{7, 1, 4};
  EXPECT_EQ(opt_metric_at(c, 5, a), opt_metric_at(c, 5, a));
  EXPECT_NE(opt_metric_at(c, 5, a), opt_metric_at(c, 5, b));
}

TEST(Curves, IterationRange) {
  const TrialCurve c = clean_curve();
  EXPECT_THROW(opt_metric_at(c, 0, {}), DomainError);
  EXPECT_THROW(opt_metric_at(c, 51, {}), DomainError);
  EXPECT_THROW(constraint_metric_at(c, 0, {}), DomainError);
}

TEST(SimulatedTrial, ChargesLedgerOncePerCall) {
  CostLedger ledger;
  SimulatedTrial trial(clean_curve(), {}, ledger, 10.0);
  trial.train_next();
  EXPECT_DOUBLE_EQ(ledger.total_primary_cost(), 1.5);
  EXPECT_DOUBLE_EQ(trial.clock(), 11.5);
  trial.evaluate_constraint(1);
  EXPECT_DOUBLE_EQ(ledger.total_constraint_cost(), 4.0);
  EXPECT_EQ(ledger.constraint_cost_count(), 1);
  EXPECT_DOUBLE_EQ(trial.clock(), 15.5);
  EXPECT_THROW(trial.evaluate_constraint(2), DomainError);
}

TEST(EventQueue, OrdersByTimeThenSequence) {
  EventQueue q;
  q.push(2.0, 0, false);
  q.push(1.0, 1, false);
  q.push(1.0, 2, true);
  EXPECT_EQ(q.pop().slot, 1u);
  EXPECT_EQ(q.pop().slot, 2u);
  EXPECT_DOUBLE_EQ(q.now(), 1.0);
  EXPECT_THROW(q.push(0.5, 3, false), InvariantError);
  EXPECT_EQ(q.pop().slot, 0u);
  EXPECT_TRUE(q.empty());
}

class RunTest : public ::testing::Test {
 protected:
  Problem problem_ = Problem::preset("fairness-like");
  SearchSpace space_ = problem_.default_space();

  ExperimentReport run(SchedulerSpec spec, double budget, std::int64_t concurrent,
                       std::uint64_t seed) {
    auto scheduler = make_scheduler(spec, problem_.constraint());
    return run_experiment(problem_, space_, *scheduler, {budget, concurrent, seed});
  }

  static SchedulerSpec no_stopping(bool callback) {
    SchedulerSpec s;
    s.type = SchedulerType::kNoStopping;
    s.constraint_callback = callback;
    return s;
  }

  static SchedulerSpec ace(bool gate = true) {
    SchedulerSpec s;
    s.type = SchedulerType::kAce;
    s.ace.low_overhead_gate = gate;
    return s;
  }
};

TEST_F(RunTest, BudgetOfExactlyThreeTrials) {
  double budget = 0.0;
  for (std::int64_t i = 0; i < 3; ++i) {
    const TrialCurve c = problem_.curve_for(configuration_at(space_, 9, i), space_);
    for (std::int64_t t = 0; t < c.max_iterations; ++t) budget += c.primary_cost;
  }
  const ExperimentReport r = run(no_stopping(true), budget, 1, 9);
  EXPECT_EQ(r.total_trials, 3);
  EXPECT_EQ(r.started_configurations, (std::vector<std::int64_t>{0, 1, 2}));
}

TEST_F(RunTest, SameSeedSameTrace) {
  std::ostringstream a, b;
  write_trace_csv(a, run(ace(), 400, 4, 3));
  write_trace_csv(b, run(ace(), 400, 4, 3));
  EXPECT_EQ(a.str(), b.str());
  std::ostringstream c;
  write_trace_csv(c, run(ace(), 400, 4, 4));
  EXPECT_NE(a.str(), c.str());
}

TEST_F(RunTest, CostConservationSerial) {
  for (const auto& spec : {ace(), ace(false), no_stopping(false), no_stopping(true)}) {
    const ExperimentReport r = run(spec, 300, 1, 5);
    double primary = 0.0, constraint = 0.0, replay = 0.0;
    for (const TraceRow& row : r.trace) {
      primary += row.primary_cost;
      constraint += row.constraint_cost;
      replay += row.primary_cost;
      replay += row.constraint_cost;
    }
    EXPECT_EQ(r.elapsed, replay);
    EXPECT_NEAR(r.elapsed, r.total_primary_cost + r.total_constraint_cost, 1e-12 * r.elapsed);
    EXPECT_EQ(primary, r.total_primary_cost);
    EXPECT_EQ(constraint, r.total_constraint_cost);
  }
}

TEST_F(RunTest, StartedConfigurationsArePrefix) {
  for (std::int64_t concurrent : {1, 2, 4, 7}) {
    const ExperimentReport r = run(ace(), 500, concurrent, 2);
    ASSERT_EQ(static_cast<std::int64_t>(r.started_configurations.size()), r.total_trials);
    for (std::size_t i = 0; i < r.started_configurations.size(); ++i) {
      EXPECT_EQ(r.started_configurations[i], static_cast<std::int64_t>(i));
    }
  }
}

TEST_F(RunTest, ConstraintRowsOnlyWhenFlagged) {
  const ExperimentReport r = run(ace(), 500, 4, 8);
  std::int64_t evaluated = 0;
  for (const TraceRow& row : r.trace) {
    EXPECT_EQ(row.evaluate_constraint, row.constraint_value.has_value());
    EXPECT_EQ(row.constraint_cost > 0.0, row.evaluate_constraint);
    evaluated += row.evaluate_constraint;
  }
  EXPECT_EQ(evaluated, r.constraint_evaluations);
}

TEST_F(RunTest, PostHocScanForConstraintAgnosticRuns) {
  const ExperimentReport r = run(no_stopping(false), 500, 4, 1);
  EXPECT_TRUE(r.post_hoc_scan);
  EXPECT_GT(r.post_hoc_evaluations, 0);
  EXPECT_EQ(r.constraint_evaluations, r.post_hoc_evaluations);
  if (r.time_to_best) EXPECT_GE(*r.time_to_best, 500.0);
  for (const TraceRow& row : r.trace) {
    if (row.kind == RowKind::kPostHoc) EXPECT_TRUE(row.evaluate_constraint);
  }
}

TEST_F(RunTest, NoFeasibleMarker) {
  problem_.settings().threshold = -1.0;
  const ExperimentReport r = run(ace(), 300, 4, 1);
  EXPECT_FALSE(r.feasible_found);
  EXPECT_FALSE(r.best_feasible_score.has_value());
  EXPECT_FALSE(r.time_to_best.has_value());
}

TEST_F(RunTest, BestFeasibleIsBestValidRow) {
  const ExperimentReport r = run(ace(), 800, 4, 6);
  ASSERT_TRUE(r.feasible_found);
  double best = -INFINITY;
  for (const TraceRow& row : r.trace) {
    if (row.group == CheckpointGroup::kValid) best = std::max(best, row.opt_metric);
  }
  EXPECT_EQ(*r.best_feasible_score, best);
}

TEST_F(RunTest, IntervalTallyCountsEveryAceTrial) {
  const ExperimentReport r = run(ace(), 800, 4, 6);
  EXPECT_EQ(r.interval_one + r.interval_full, r.total_trials);
}

TEST_F(RunTest, RejectsBadOptions) {
  EXPECT_THROW(run(ace(), 0.0, 4, 1), DomainError);
  EXPECT_THROW(run(ace(), 100.0, 0, 1), DomainError);
  EXPECT_THROW(run(ace(), INFINITY, 1, 1), DomainError);
}

TEST(Presets, Names) {
  EXPECT_EQ(Problem::preset_names().size(), 2u);
  EXPECT_THROW(Problem::preset("nope"), ConfigError);
  EXPECT_EQ(Problem::preset("robustness-like").metric_name(), "accuracy");
}

TEST(Presets, CurvesAreDeterministicPerConfiguration) {
  const Problem p = Problem::preset("robustness-like");
  const auto c = configuration_at(p.default_space(), 4, 11);
  const TrialCurve a = p.curve_for(c, p.default_space());
  const TrialCurve b = p.curve_for(c, p.default_space());
  EXPECT_EQ(a.opt_asymptote, b.opt_asymptote);
  EXPECT_EQ(a.constraint_asymptote, b.constraint_asymptote);
  EXPECT_EQ(a.max_iterations, b.max_iterations);
}

TEST(Presets, HardConstraintRegime) {
  // At most one configuration in five is ever feasible on the fairness-like
  // preset; the robustness-like one is harder still.
  for (const char* name : {"fairness-like", "robustness-like"}) {
    const Problem p = Problem::preset(name);
    const auto configs = sequence_for_seed(p.default_space(), 1, 2000);
    int feasible = 0;
    for (const auto& c : configs) {
      feasible += ever_feasible(p.curve_for(c, p.default_space()), p.constraint());
    }
    EXPECT_LE(feasible, 400) << name;
    EXPECT_GT(feasible, 0) << name;
  }
}

}  // namespace
}  // namespace ace
