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

#ifndef ACE_CORE_PROBLEM_HPP_
#define ACE_CORE_PROBLEM_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "core/search_space.hpp"
#include "core/trial_history.hpp"

namespace ace {

enum class MetricMode { kMinimize, kMaximize };

// Synthetic learning curve, constraint trajectory and costs of one
// configuration.
//
//   opt(t)        = opt_asymptote + (opt_start - opt_asymptote) e^{-opt_rate t} + noise
//   constraint(t) = constraint_asymptote
//                   + (constraint_start - constraint_asymptote) e^{-constraint_rate t}
//                   + oscillation_amplitude sin(2 pi t / oscillation_period) + noise
struct TrialCurve {
  double opt_asymptote = 0.0;
  double opt_start = 1.0;
  double opt_rate = 0.1;
  double opt_noise = 0.0;

  double constraint_asymptote = 0.0;
  double constraint_start = 0.0;
  double constraint_rate = 0.1;
  double oscillation_amplitude = 0.0;
  double oscillation_period = 1.0;
  double constraint_noise = 0.0;

  double primary_cost = 1.0;     // per iteration
  double constraint_cost = 0.0;  // per evaluation
  std::int64_t max_iterations = 1;

  void validate() const;
};

// Identifies one trial's noise stream.
struct NoiseKey {
  std::uint64_t problem_seed = 0;
  std::uint64_t search_seed = 0;
  std::int64_t trial = 0;
};

// Metric values in the problem's own sign. Both are pure functions of
// (curve, t, key); t must lie in [1, T].
double opt_metric_at(const TrialCurve& curve, std::int64_t t, const NoiseKey& key);
double constraint_metric_at(const TrialCurve& curve, std::int64_t t, const NoiseKey& key);

// Tunable knobs of a preset; every field can be overridden from config.
struct ProblemSettings {
  std::string preset;
  double threshold = 0.25;
  double primary_cost = 1.0;
  double constraint_cost = 2.0;
  double opt_noise = 0.002;
  double constraint_noise = 0.004;
  double oscillation_amplitude = 0.025;
  std::uint64_t seed = 7;
};

// Maps configurations to synthetic trial curves. Two presets exist:
// "fairness-like" (cheap constraint, r near 2, T in [8, 256]) and
// "robustness-like" (expensive constraint, r near 24, T in [2, 160]).
class Problem {
 public:
  static Problem preset(std::string_view name);
  static std::vector<std::string> preset_names();

  const ProblemSettings& settings() const { return settings_; }
  ProblemSettings& settings() { return settings_; }

  const SearchSpace& default_space() const { return default_space_; }
  MetricMode metric_mode() const { return metric_mode_; }
  std::string_view metric_name() const { return metric_name_; }
  ConstraintSpec constraint() const { return {settings_.threshold}; }

  // Deterministic in (configuration values, settings.seed).
  TrialCurve curve_for(const Configuration& config, const SearchSpace& space) const;

  // Converts between the problem's metric sign and minimization form.
  double to_internal(double metric) const {
    return metric_mode_ == MetricMode::kMaximize ? -metric : metric;
  }
  double from_internal(double metric) const { return to_internal(metric); }

 private:
  enum class Family { kFairness, kRobustness };

  Problem(Family family, ProblemSettings settings, SearchSpace space, MetricMode mode,
          std::string metric_name);

  Family family_;
  ProblemSettings settings_;
  SearchSpace default_space_;
  MetricMode metric_mode_;
  std::string metric_name_;
};

// Whether the constraint trajectory dips to the threshold at some
// iteration, ignoring noise.
bool ever_feasible(const TrialCurve& curve, const ConstraintSpec& constraint);

}  // namespace ace

#endif  // ACE_CORE_PROBLEM_HPP_
