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

#ifndef ACE_CORE_COST_MODEL_HPP_
#define ACE_CORE_COST_MODEL_HPP_

#include <cstdint>

namespace ace {

// Cost model for a trial whose constraint is checked every `interval`
// training iterations and which is pruned with a fixed probability after
// each check. Costs are in abstract units.
struct CostParams {
  double primary_cost_per_iter = 1.0;     // C2, > 0
  double constraint_cost_per_eval = 0.0;  // C1, >= 0
  double stop_probability = 0.5;          // p in (0, 1]
  std::int64_t max_iterations = 1;        // T >= 1
  std::int64_t interval = 1;              // beta in [1, T]

  // Throws DomainError when a field is out of range.
  void validate() const;

  double cost_ratio() const { return constraint_cost_per_eval / primary_cost_per_iter; }

  // Number of constraint checks z: the smallest integer with
  // (z - 1) * beta < T <= z * beta.
  std::int64_t evaluation_count() const {
    return (max_iterations + interval - 1) / interval;
  }
};

// Direct summation over the number of checks survived. Integer z, no closed
// form; this is the reference the closed form is checked against.
double expected_cost_exact(const CostParams& params);

// C2 * (r + beta) * (1 - (1 - p)^(T / beta)) / p with T / beta real. p = 1
// is evaluated as its limit C2 * (r + beta).
double expected_cost_closed(const CostParams& params);

// Cost ratio at which beta = 1 and beta = T have equal expected cost.
// Requires 0 < p < 1 and T >= 2.
double cost_ratio_threshold(double stop_probability, std::int64_t max_iterations);

// Cost-optimal interval: 1 below the threshold, T at or above it. T = 1
// and p = 1 both give 1.
std::int64_t choose_interval(double cost_ratio, double stop_probability,
                             std::int64_t max_iterations);

struct IntervalOptimum {
  std::int64_t interval = 1;
  double cost = 0.0;
};

// Exhaustive scan of expected_cost_closed over integer beta in [1, T].
// Cost ties within 1e-12 relative keep the smaller beta.
IntervalOptimum brute_force_optimal_interval(double primary_cost_per_iter, double cost_ratio,
                                             double stop_probability,
                                             std::int64_t max_iterations);

}  // namespace ace

#endif  // ACE_CORE_COST_MODEL_HPP_
