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

#include "core/theorem_sweep.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <string>

#include "core/cost_model.hpp"
#include "core/csv.hpp"
#include "core/errors.hpp"
#include "core/random.hpp"

namespace ace {

TheoremSweepReport run_theorem_sweep(std::uint64_t cases, std::uint64_t seed,
                                     std::int64_t max_iterations) {
  if (max_iterations < 2) throw DegenerateRangeError("sweep needs max_iterations >= 2");
  const auto started = std::chrono::steady_clock::now();
  TheoremSweepReport report;
  CounterRng rng{0x7e0, seed};
  for (std::uint64_t i = 0; i < cases; ++i) {
    const double p = 0.01 + 0.98 * rng.uniform();
    const double r = std::exp2(-4.0 + 14.0 * rng.uniform());
    const auto span = static_cast<std::uint64_t>(max_iterations - 1);
    const std::int64_t t = 2 + static_cast<std::int64_t>(rng.next_u64() % span);

    const IntervalOptimum best = brute_force_optimal_interval(1.0, r, p, t);
    CostParams params{1.0, r, p, t, 1};
    const double cost_one = expected_cost_closed(params);
    params.interval = t;
    const double cost_full = expected_cost_closed(params);
    const double end_min = std::min(cost_one, cost_full);
    const double gap = std::abs(best.cost - end_min) / end_min;

    ++report.cases;
    if (best.interval == 1 || best.interval == t) ++report.extremal;
    if (gap < 1e-9) ++report.within_tolerance;
    report.max_relative_gap = std::max(report.max_relative_gap, gap);

    const double threshold = cost_ratio_threshold(p, t);
    if (std::abs(r - threshold) > 1e-6 * threshold) {
      ++report.choice_checked;
      if (choose_interval(r, p, t) == best.interval) ++report.choice_agreed;
    }
  }
  report.seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started).count();
  return report;
}

void write_cost_curve(std::ostream& out, double stop_probability, double primary_cost,
                      const std::vector<double>& cost_ratios,
                      const std::vector<std::int64_t>& iterations) {
  if (cost_ratios.empty() || iterations.empty()) {
    throw DomainError("cost curve needs at least one cost ratio and one iteration count");
  }
  csv::write_row(out, {"p", "r", "T", "beta", "expected_cost"});
  for (double r : cost_ratios) {
    for (std::int64_t t : iterations) {
      CostParams params{primary_cost, r * primary_cost, stop_probability, t, 1};
      params.validate();
      for (std::int64_t beta = 1; beta <= t; ++beta) {
        params.interval = beta;
        csv::write_row(out, {csv::format_double(stop_probability), csv::format_double(r),
                             std::to_string(t), std::to_string(beta),
                             csv::format_double(expected_cost_closed(params))});
      }
    }
  }
}

}  // namespace ace
