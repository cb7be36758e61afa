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

#ifndef ACE_TESTS_SUPPORT_FIXTURES_HPP_
#define ACE_TESTS_SUPPORT_FIXTURES_HPP_

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <vector>

#include "core/schedulers.hpp"

namespace ace::testing {

// A scripted trial: metric and constraint as functions of the iteration.
// Metrics are in minimization form.
struct ScriptedTrial {
  TrialId id = 0;
  std::int64_t max_iterations = 1;
  std::function<double(std::int64_t)> opt;
  std::function<double(std::int64_t)> constraint;
};

struct ScriptedOutcome {
  std::int64_t last_iteration = 0;  // where the trial stopped or completed
  bool stopped = false;
  std::vector<SchedulerDecision> decisions;  // one per reported checkpoint
  std::vector<bool> evaluated;
};

// Drives `scheduler` like the simulator would: each round advances every
// live trial by one iteration in the given order. Trials start on their
// first iteration, so earlier trials' costs are visible to later ones.
inline std::map<TrialId, ScriptedOutcome> drive(Scheduler& scheduler,
                                                const std::vector<ScriptedTrial>& trials) {
  std::map<TrialId, ScriptedOutcome> out;
  std::map<TrialId, std::pair<std::int64_t, double>> best;  // iteration, metric
  std::int64_t horizon = 0;
  for (const auto& t : trials) horizon = std::max(horizon, t.max_iterations);
  double clock = 0.0;
  for (std::int64_t it = 1; it <= horizon; ++it) {
    for (const auto& t : trials) {
      ScriptedOutcome& o = out[t.id];
      if (o.stopped || it > t.max_iterations) continue;
      if (it == 1) scheduler.on_trial_start(t.id, t.max_iterations);
      const double m = t.opt(it);
      auto& b = best[t.id];
      if (it == 1 || m < b.second) b = {it, m};
      scheduler.observe_primary_cost(1.0);
      clock += 1.0;
      TrialProgress p{t.id, it, t.max_iterations, m, b.first, b.second, clock};
      const ConstraintRequest req = scheduler.request_constraint(p);
      std::optional<ConstraintObservation> obs;
      if (req.evaluate) {
        obs = ConstraintObservation{req.checkpoint, t.opt(req.checkpoint),
                                    t.constraint(req.checkpoint)};
        scheduler.observe_constraint_cost(1.0);
      }
      const SchedulerDecision d = scheduler.on_checkpoint(p, obs);
      o.decisions.push_back(d);
      o.evaluated.push_back(req.evaluate);
      o.last_iteration = it;
      if (d.action == Action::kStop) o.stopped = true;
    }
  }
  return out;
}

// Two trials in the shape of the motivating example, plus a background
// population that has already finished (T = 1) so every group has members.
//   trial 1: improving until iteration 26, slightly invalid at 5-7.
//   trial 2: better metric throughout, invalid by a wide margin everywhere.
inline constexpr double kFixtureThreshold = 0.25;

inline std::vector<ScriptedTrial> motivating_fixture() {
  std::vector<ScriptedTrial> trials;
  for (int i = 0; i < 4; ++i) {
    trials.push_back({100 + i, 1, [i](std::int64_t) { return 0.70 + 0.01 * i; },
                      [](std::int64_t) { return 0.10; }});
  }
  for (int i = 0; i < 4; ++i) {
    trials.push_back({200 + i, 1, [i](std::int64_t) { return 0.60 + 0.01 * i; },
                      [i](std::int64_t) { return 0.33 + 0.01 * i; }});
  }
  trials.push_back({2, 64, [](std::int64_t t) { return 0.45 - 0.01 * std::min<std::int64_t>(t, 30); },
                    [](std::int64_t) { return 0.90; }});
  trials.push_back({1, 64,
                    [](std::int64_t t) {
                      const double td = static_cast<double>(t);
                      return t <= 26 ? 0.50 - 0.01 * td : 0.24 + 0.002 * (td - 26.0);
                    },
                    [](std::int64_t t) { return t >= 5 && t <= 7 ? 0.27 : 0.10; }});
  return trials;
}

}  // namespace ace::testing

#endif  // ACE_TESTS_SUPPORT_FIXTURES_HPP_
