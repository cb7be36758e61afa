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

#ifndef ACE_CORE_THEOREM_SWEEP_HPP_
#define ACE_CORE_THEOREM_SWEEP_HPP_

#include <cstdint>
#include <ostream>
#include <vector>

namespace ace {

// Randomized check that the exhaustive interval optimum is always an end
// point of [1, T] and that choose_interval picks it.
struct TheoremSweepReport {
  std::uint64_t cases = 0;
  std::uint64_t extremal = 0;           // argmin in {1, T}
  std::uint64_t within_tolerance = 0;   // argmin cost within 1e-9 of min(cost(1), cost(T))
  std::uint64_t choice_checked = 0;     // cases away from the threshold
  std::uint64_t choice_agreed = 0;
  double max_relative_gap = 0.0;
  double seconds = 0.0;

  bool passed() const {
    return extremal == cases && within_tolerance == cases && choice_agreed == choice_checked;
  }
};

// Draws p in (0.01, 0.99), r = 2^u with u in [-4, 10], T in [2, max_T].
TheoremSweepReport run_theorem_sweep(std::uint64_t cases, std::uint64_t seed,
                                     std::int64_t max_iterations = 256);

// Expected cost for every integer beta in [1, T], for each (r, T) pair of
// the cartesian product. Columns: p, r, T, beta, expected_cost.
void write_cost_curve(std::ostream& out, double stop_probability, double primary_cost,
                      const std::vector<double>& cost_ratios,
                      const std::vector<std::int64_t>& iterations);

}  // namespace ace

#endif  // ACE_CORE_THEOREM_SWEEP_HPP_
