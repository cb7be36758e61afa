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

// Randomized invariant checks shared by the unit suite and the acceptance
// binary. Each check returns the first counterexample it meets, or nothing.

#ifndef ACE_TESTS_SUPPORT_PROPERTIES_HPP_
#define ACE_TESTS_SUPPORT_PROPERTIES_HPP_

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "core/problem.hpp"
#include "core/schedulers.hpp"
#include "core/simulator.hpp"
#include "core/trial_history.hpp"

namespace ace::testing {

using Counterexample = std::optional<std::string>;

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  double uniform(double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng_);
  }
  std::int64_t integer(std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_);
  }
  bool coin(double p = 0.5) { return std::bernoulli_distribution(p)(rng_); }
  // Missing 30% of the time, exactly on the threshold 5% of the time.
  std::optional<double> constraint(double threshold) {
    const double r = uniform(0.0, 1.0);
    if (r < 0.3) return std::nullopt;
    if (r < 0.35) return threshold;
    return threshold + uniform(-0.3, 0.3);
  }
  CheckpointGroup group() {
    switch (integer(0, 2)) {
      case 0: return CheckpointGroup::kNoConstraint;
      case 1: return CheckpointGroup::kValid;
      default: return CheckpointGroup::kInvalid;
    }
  }

 private:
  std::mt19937_64 rng_;
};

template <typename... Parts>
std::string describe(const Parts&... parts) {
  std::ostringstream s;
  s.precision(17);
  (s << ... << parts);
  return s.str();
}

// Random interleavings of trials through ACE; after every checkpoint, no
// group may hold more stop verdicts than floor(P * n).
inline Counterexample check_stratum_fraction_bound(int cases, std::uint64_t seed) {
  Gen g(seed);
  for (int c = 0; c < cases; ++c) {
    AceConfig config;
    config.truncation_percentage = g.uniform(0.01, 0.99);
    config.constraint = {g.uniform(-1.0, 1.0)};
    config.interval_mode = g.coin() ? IntervalMode::kFixedOne : IntervalMode::kAdaptive;
    config.low_overhead_gate = g.coin();
    AceScheduler s(config);
    const std::int64_t n_trials = g.integer(1, 12);
    std::vector<std::int64_t> iteration(n_trials, 0), t_max(n_trials);
    std::vector<bool> alive(n_trials, true);
    for (std::int64_t i = 0; i < n_trials; ++i) {
      t_max[i] = g.integer(1, 20);
      s.on_trial_start(i, t_max[i]);
    }
    const std::int64_t steps = g.integer(1, 80);
    for (std::int64_t k = 0; k < steps; ++k) {
      const std::int64_t i = g.integer(0, n_trials - 1);
      if (!alive[i]) continue;
      const std::int64_t it = ++iteration[i];
      const double opt = g.uniform(-1.0, 1.0);
      s.observe_primary_cost(g.uniform(0.1, 2.0));
      const TrialProgress p{i, it, t_max[i], opt, it, opt, static_cast<double>(k)};
      std::optional<ConstraintObservation> obs;
      if (s.request_constraint(p).evaluate) {
        const auto v = g.constraint(config.constraint.threshold);
        obs = ConstraintObservation{it, opt, v.value_or(config.constraint.threshold - 0.1)};
        s.observe_constraint_cost(g.uniform(0.1, 5.0));
      }
      const SchedulerDecision d = s.on_checkpoint(p, obs);
      const std::int64_t bound = truncation_count(config.truncation_percentage, d.group_size);
      if (d.action == Action::kStop) {
        if (d.rank > bound) {
          return describe("case ", c, ": stop at rank ", d.rank, " with bound ", bound);
        }
        alive[i] = false;
      }
      if (it >= t_max[i]) alive[i] = false;

      std::int64_t would_stop = 0;
      std::int64_t members = 0;
      for (std::int64_t j = 0; j < n_trials; ++j) {
        const TrialStanding* st = s.history().standing(j);
        if (st == nullptr || st->group != d.group) continue;
        ++members;
        would_stop += stratum_should_stop(config.truncation_percentage, s.history(), j, d.group)
                          .action == Action::kStop;
      }
      const double floor_pn =
          std::floor(config.truncation_percentage * static_cast<double>(members) + 1e-9);
      if (static_cast<double>(would_stop) > floor_pn) {
        return describe("case ", c, ": ", would_stop, " stop verdicts among ", members,
                        " trials at P=", config.truncation_percentage);
      }
    }
  }
  return std::nullopt;
}

// The best feasible score never rises and always equals the minimum over
// recorded valid checkpoints.
inline Counterexample check_best_feasible_monotone(int cases, std::uint64_t seed) {
  Gen g(seed);
  for (int c = 0; c < cases; ++c) {
    const ConstraintSpec spec{g.uniform(-0.5, 0.5)};
    RunningHistory h(spec);
    double previous = h.best_feasible_score();
    double expected = std::numeric_limits<double>::infinity();
    const std::int64_t n = g.integer(1, 60);
    for (std::int64_t k = 0; k < n; ++k) {
      const auto record = CheckpointRecord::classify(
          g.integer(0, 5), g.integer(1, 30), g.uniform(-1.0, 1.0), g.constraint(spec.threshold),
          spec);
      h.record_checkpoint(record);
      if (record.group == CheckpointGroup::kValid) expected = std::min(expected, record.opt_metric);
      if (h.best_feasible_score() > previous) {
        return describe("case ", c, ": f* rose from ", previous, " to ", h.best_feasible_score());
      }
      if (h.best_feasible_score() != expected) {
        return describe("case ", c, ": f* ", h.best_feasible_score(), " expected ", expected);
      }
      previous = h.best_feasible_score();
    }
  }
  return std::nullopt;
}

// Per-row costs add up to the report totals. On one slot the run clock is
// exactly the in-order replay of row costs and matches the totals to
// round-off; on several slots it never exceeds them.
inline Counterexample check_cost_conservation(int cases, std::uint64_t seed) {
  Gen g(seed);
  const Problem presets[] = {Problem::preset("fairness-like"), Problem::preset("robustness-like")};
  for (int c = 0; c < cases; ++c) {
    const Problem& problem = presets[g.integer(0, 1)];
    SchedulerSpec spec;
    spec.type = static_cast<SchedulerType>(g.integer(0, 2));
    spec.ace.low_overhead_gate = g.coin();
    spec.ace.truncation_percentage = g.uniform(0.05, 0.8);
    spec.asha.stratum_mode = g.coin(0.3);
    spec.asha.constraint_interval_fixed = g.coin();
    spec.asha.constraint_callback = g.coin();
    spec.asha.max_time_units = 256;
    spec.constraint_callback = g.coin();
    const std::int64_t concurrent = g.integer(1, 4);
    auto scheduler = make_scheduler(spec, problem.constraint());
    const ExperimentReport r =
        run_experiment(problem, problem.default_space(), *scheduler,
                       {g.uniform(5.0, 120.0), concurrent, static_cast<std::uint64_t>(c)});
    double primary = 0.0, constraint = 0.0, replay = 0.0;
    for (const TraceRow& row : r.trace) {
      primary += row.primary_cost;
      constraint += row.constraint_cost;
      replay += row.primary_cost;
      replay += row.constraint_cost;
    }
    if (primary != r.total_primary_cost || constraint != r.total_constraint_cost) {
      return describe("case ", c, ": row totals ", primary, "/", constraint, " vs report ",
                      r.total_primary_cost, "/", r.total_constraint_cost);
    }
    const double serial = r.total_primary_cost + r.total_constraint_cost;
    if (concurrent == 1 && (r.elapsed != replay || std::abs(r.elapsed - serial) > 1e-12 * serial)) {
      return describe("case ", c, ": elapsed ", r.elapsed, " vs replayed clock ", replay,
                      " and cost sum ", serial);
    }
    if (r.elapsed > serial * (1.0 + 1e-12)) {
      return describe("case ", c, ": elapsed ", r.elapsed, " vs cost sum ", serial, " on ",
                      concurrent, " slots");
    }
  }
  return std::nullopt;
}

// Random arrivals at one rung: promotions per group stay within
// ceil(recorded / eta). A second pass runs whole trials through the
// scheduler and checks every rung, plus that rung k+1 sees exactly the
// trials rung k promoted.
inline Counterexample check_asha_promotion_bound(int cases, std::uint64_t seed) {
  Gen g(seed);
  for (int c = 0; c < cases; ++c) {
    const std::int64_t eta = g.integer(2, 6);
    AshaRung rung;
    const std::int64_t n = g.integer(1, 100);
    for (std::int64_t k = 0; k < n; ++k) {
      const CheckpointGroup grp = g.group();
      const std::optional<double> violation =
          grp == CheckpointGroup::kInvalid ? std::optional<double>(g.uniform(0.0, 1.0))
                                           : std::nullopt;
      rung.arrive(k, g.uniform(-1.0, 1.0), grp, violation, eta);
      for (CheckpointGroup q :
           {CheckpointGroup::kNoConstraint, CheckpointGroup::kValid, CheckpointGroup::kInvalid}) {
        const std::int64_t m = rung.recorded(q);
        if (rung.promoted(q) > (m + eta - 1) / eta) {
          return describe("rung case ", c, ": ", rung.promoted(q), " promoted of ", m,
                          " at eta=", eta);
        }
      }
    }
  }
  for (int c = 0; c < cases; ++c) {
    AshaConfig config;
    config.reduction_factor = g.integer(2, 4);
    config.grace_period = g.integer(1, 2);
    config.max_time_units = 64;
    AshaScheduler s(config);
    const std::int64_t n_trials = g.integer(1, 30);
    const std::int64_t t_max = 100;  // every rung lies strictly before the end
    for (std::int64_t i = 0; i < n_trials; ++i) {
      s.on_trial_start(i, t_max);
      for (std::int64_t it = 1; it <= t_max; ++it) {
        const double opt = g.uniform(-1.0, 1.0);
        const TrialProgress p{i, it, t_max, opt, it, opt, 0.0};
        s.request_constraint(p);
        if (s.on_checkpoint(p, std::nullopt).action == Action::kStop) break;
      }
    }
    for (std::size_t k = 0; k < s.rungs().size(); ++k) {
      const std::int64_t m = s.rung(k).recorded(CheckpointGroup::kNoConstraint);
      const std::int64_t promoted = s.rung(k).promoted(CheckpointGroup::kNoConstraint);
      if (promoted > (m + config.reduction_factor - 1) / config.reduction_factor) {
        return describe("scheduler case ", c, ": rung ", k, " promoted ", promoted, " of ", m);
      }
      if (k + 1 < s.rungs().size() &&
          s.rung(k + 1).recorded(CheckpointGroup::kNoConstraint) != promoted) {
        return describe("scheduler case ", c, ": rung ", k + 1, " saw ",
                        s.rung(k + 1).recorded(CheckpointGroup::kNoConstraint), " arrivals but ",
                        promoted, " were promoted");
      }
    }
  }
  return std::nullopt;
}

}  // namespace ace::testing

#endif  // ACE_TESTS_SUPPORT_PROPERTIES_HPP_
