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

#include "core/cost_model.hpp"

#include <cmath>
#include <limits>
#include <string>

#include "core/errors.hpp"

namespace ace {
namespace {

void check_probability(double p) {
  if (!(p > 0.0 && p <= 1.0)) {
    throw DomainError("stop_probability must lie in (0, 1], got " + std::to_string(p));
  }
}

void check_cost_ratio(double r) {
  if (!(r >= 0.0) || !std::isfinite(r)) {
    throw DomainError("cost_ratio must be finite and >= 0, got " + std::to_string(r));
  }
}

// (1 - p)^x - 1, accurate for small p.
double survival_minus_one(double p, double x) { return std::expm1(x * std::log1p(-p)); }

}  // namespace

void CostParams::validate() const {
  if (!(primary_cost_per_iter > 0.0) || !std::isfinite(primary_cost_per_iter)) {
    throw DomainError("primary_cost_per_iter must be finite and > 0");
  }
  if (!(constraint_cost_per_eval >= 0.0) || !std::isfinite(constraint_cost_per_eval)) {
    throw DomainError("constraint_cost_per_eval must be finite and >= 0");
  }
  check_probability(stop_probability);
  if (max_iterations < 1) throw DomainError("max_iterations must be >= 1");
  if (interval < 1 || interval > max_iterations) {
    throw DomainError("interval must lie in [1, max_iterations]");
  }
}

double expected_cost_exact(const CostParams& params) {
  params.validate();
  const double c1 = params.constraint_cost_per_eval;
  const double c2 = params.primary_cost_per_iter;
  const double p = params.stop_probability;
  const double beta = static_cast<double>(params.interval);
  const std::int64_t z = params.evaluation_count();

  // Running (1 - p)^(k - 1).
  double survive = 1.0;
  double stopped_cost = 0.0;
  for (std::int64_t k = 1; k <= z; ++k) {
    const double kd = static_cast<double>(k);
    stopped_cost += survive * p * (c1 * kd + c2 * kd * beta);
    survive *= (1.0 - p);
  }
  const double full_cost =
      c1 * static_cast<double>(z) + c2 * static_cast<double>(params.max_iterations);
  return survive * full_cost + stopped_cost;
}

double expected_cost_closed(const CostParams& params) {
  params.validate();
  const double c2 = params.primary_cost_per_iter;
  const double r = params.cost_ratio();
  const double beta = static_cast<double>(params.interval);
  const double p = params.stop_probability;
  if (p == 1.0) return c2 * (r + beta);
  const double checks = static_cast<double>(params.max_iterations) / beta;
  return c2 * (r + beta) * (-survival_minus_one(p, checks)) / p;
}

double cost_ratio_threshold(double stop_probability, std::int64_t max_iterations) {
  const double p = stop_probability;
  if (!(p > 0.0 && p < 1.0)) {
    throw DomainError("stop_probability must lie in (0, 1) for the threshold, got " +
                      std::to_string(p));
  }
  if (max_iterations < 2) {
    throw DegenerateRangeError("max_iterations must be >= 2; the interval range is {1}");
  }
  const double t = static_cast<double>(max_iterations);
  const double tail = survival_minus_one(p, t);  // (1 - p)^T - 1
  const double numerator = p * t + tail;
  const double denominator = -p - tail;  // 1 - p - (1 - p)^T
  return numerator / denominator;
}

std::int64_t choose_interval(double cost_ratio, double stop_probability,
                             std::int64_t max_iterations) {
  check_cost_ratio(cost_ratio);
  check_probability(stop_probability);
  if (max_iterations < 1) throw DomainError("max_iterations must be >= 1");
  if (max_iterations == 1 || stop_probability == 1.0) return 1;
  const double threshold = cost_ratio_threshold(stop_probability, max_iterations);
  return cost_ratio < threshold ? 1 : max_iterations;
}

IntervalOptimum brute_force_optimal_interval(double primary_cost_per_iter, double cost_ratio,
                                             double stop_probability,
                                             std::int64_t max_iterations) {
  check_cost_ratio(cost_ratio);
  CostParams params;
  params.primary_cost_per_iter = primary_cost_per_iter;
  params.constraint_cost_per_eval = cost_ratio * primary_cost_per_iter;
  params.stop_probability = stop_probability;
  params.max_iterations = max_iterations;

  IntervalOptimum best{1, std::numeric_limits<double>::infinity()};
  for (std::int64_t beta = 1; beta <= max_iterations; ++beta) {
    params.interval = beta;
    const double cost = expected_cost_closed(params);
    if (beta == 1 || cost < best.cost * (1.0 - 1e-12)) {
      best = {beta, cost};
    }
  }
  return best;
}

}  // namespace ace
