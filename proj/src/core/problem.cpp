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

#include "core/problem.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>

#include "core/errors.hpp"
#include "core/random.hpp"

namespace ace {
namespace {

constexpr std::uint64_t kOptNoiseTag = 0x0b7;
constexpr std::uint64_t kConstraintNoiseTag = 0xc0b;
constexpr std::uint64_t kJitterTag = 0x717;

ParamSpec param(std::string name, ParamKind kind, double low, double high, double initial,
                bool axis = false, double per_unit = 1.0) {
  ParamSpec p;
  p.name = std::move(name);
  p.kind = kind;
  p.low = low;
  p.high = high;
  p.initial = initial;
  p.iteration_axis = axis;
  p.iterations_per_unit = per_unit;
  return p;
}

ParamSpec choice(std::string name, std::vector<double> choices, double initial) {
  ParamSpec p;
  p.name = std::move(name);
  p.kind = ParamKind::kChoice;
  p.choices = std::move(choices);
  p.initial = initial;
  return p;
}

SearchSpace fairness_space() {
  return SearchSpace({
      param("n_estimators", ParamKind::kLogUniformInt, 8, 256, 8, true),
      param("num_leaves", ParamKind::kLogUniformInt, 4, 256, 4),
      param("min_child_samples", ParamKind::kLogUniformInt, 2, 129, 20),
      param("learning_rate", ParamKind::kLogUniformReal, 1.0 / 1024, 1.0, 0.1),
      param("log_max_bin", ParamKind::kLogUniformInt, 3, 11, 8),
      param("colsample_bytree", ParamKind::kUniformReal, 0.01, 1.0, 1.0),
      param("reg_alpha", ParamKind::kLogUniformReal, 1.0 / 1024, 1024, 1.0 / 1024),
      param("reg_lambda", ParamKind::kLogUniformReal, 1.0 / 1024, 1024, 1.0),
  });
}

SearchSpace robustness_space() {
  return SearchSpace({
      param("learning_rate", ParamKind::kLogUniformReal, 1e-6, 1e-3, 1e-5),
      param("num_train_epochs", ParamKind::kLogUniformReal, 0.1, 10.0, 3.0, true, 16.0),
      choice("per_device_train_batch_size", {4, 8, 16, 32}, 32),
      param("warmup_ratio", ParamKind::kUniformReal, 0.0, 0.3, 0.0),
      param("weight_decay", ParamKind::kUniformReal, 0.0, 0.3, 0.0),
      param("adam_epsilon", ParamKind::kLogUniformReal, 1e-8, 1e-6, 1e-6),
      choice("seed", {40, 41, 42, 43, 44}, 42),
  });
}

// Reads normalized coordinates by parameter name; names missing from the
// space fall back to the middle of the range.
class Coordinates {
 public:
  Coordinates(const Configuration& config, const SearchSpace& space)
      : config_(config), space_(space) {}

  double u(std::string_view name, double fallback = 0.5) const {
    const ParamSpec* spec = space_.find(name);
    const auto value = config_.get(name);
    if (spec == nullptr || !value) return fallback;
    return spec->normalized(*value);
  }

  double raw(std::string_view name, double fallback) const {
    return config_.get(name).value_or(fallback);
  }

 private:
  const Configuration& config_;
  const SearchSpace& space_;
};

// Per-configuration uniforms, keyed by the parameter values.
class Jitter {
 public:
  Jitter(const Configuration& config, std::uint64_t seed) {
    std::uint64_t h = mix64(seed ^ kJitterTag);
    for (const auto& [name, value] : config.values) {
      for (char c : name) h = mix64(h ^ static_cast<unsigned char>(c));
      h = mix64(h ^ std::bit_cast<std::uint64_t>(value));
    }
    key_ = h;
  }

  double operator()(std::uint64_t index) const {
    return static_cast<double>(mix64(key_ + 0x9e3779b97f4a7c15ULL * (index + 1)) >> 11) *
           0x1.0p-53;
  }

 private:
  std::uint64_t key_ = 0;
};

double noise(const NoiseKey& key, std::uint64_t tag, std::int64_t t) {
  CounterRng rng{key.problem_seed, key.search_seed, static_cast<std::uint64_t>(key.trial),
                 static_cast<std::uint64_t>(t), tag};
  return rng.normal();
}

void check_iteration(const TrialCurve& curve, std::int64_t t) {
  if (t < 1 || t > curve.max_iterations) {
    throw DomainError("iteration " + std::to_string(t) + " outside [1, " +
                      std::to_string(curve.max_iterations) + "]");
  }
}

}  // namespace

void TrialCurve::validate() const {
  if (max_iterations < 1) throw DomainError("curve max_iterations must be >= 1");
  if (!(opt_rate > 0.0) || !(constraint_rate > 0.0)) throw DomainError("curve rates must be > 0");
  if (!(oscillation_period > 0.0)) throw DomainError("oscillation period must be > 0");
  if (opt_noise < 0.0 || constraint_noise < 0.0 || oscillation_amplitude < 0.0) {
    throw DomainError("noise and oscillation amplitudes must be >= 0");
  }
  if (!(primary_cost > 0.0) || !(constraint_cost >= 0.0)) {
    throw DomainError("curve costs must satisfy primary > 0 and constraint >= 0");
  }
}

double opt_metric_at(const TrialCurve& curve, std::int64_t t, const NoiseKey& key) {
  check_iteration(curve, t);
  const double td = static_cast<double>(t);
  double value = curve.opt_asymptote +
                 (curve.opt_start - curve.opt_asymptote) * std::exp(-curve.opt_rate * td);
  if (curve.opt_noise > 0.0) value += curve.opt_noise * noise(key, kOptNoiseTag, t);
  return value;
}

double constraint_metric_at(const TrialCurve& curve, std::int64_t t, const NoiseKey& key) {
  check_iteration(curve, t);
  const double td = static_cast<double>(t);
  double value =
      curve.constraint_asymptote +
      (curve.constraint_start - curve.constraint_asymptote) * std::exp(-curve.constraint_rate * td) +
      curve.oscillation_amplitude * std::sin(2.0 * std::numbers::pi * td / curve.oscillation_period);
  if (curve.constraint_noise > 0.0) {
    value += curve.constraint_noise * noise(key, kConstraintNoiseTag, t);
  }
  return value;
}

bool ever_feasible(const TrialCurve& curve, const ConstraintSpec& constraint) {
  TrialCurve clean = curve;
  clean.constraint_noise = 0.0;
  for (std::int64_t t = 1; t <= clean.max_iterations; ++t) {
    if (constraint.satisfied(constraint_metric_at(clean, t, {}))) return true;
  }
  return false;
}

Problem::Problem(Family family, ProblemSettings settings, SearchSpace space, MetricMode mode,
                 std::string metric_name)
    : family_(family),
      settings_(std::move(settings)),
      default_space_(std::move(space)),
      metric_mode_(mode),
      metric_name_(std::move(metric_name)) {}

std::vector<std::string> Problem::preset_names() { return {"fairness-like", "robustness-like"}; }

Problem Problem::preset(std::string_view name) {
  if (name == "fairness-like") {
    ProblemSettings s;
    s.preset = "fairness-like";
    s.threshold = 0.20;
    s.primary_cost = 1.0;
    s.constraint_cost = 2.0;
    s.opt_noise = 0.002;
    s.constraint_noise = 0.004;
    s.oscillation_amplitude = 0.025;
    return Problem(Family::kFairness, s, fairness_space(), MetricMode::kMaximize, "auc");
  }
  if (name == "robustness-like") {
    ProblemSettings s;
    s.preset = "robustness-like";
    s.threshold = 0.20;
    s.primary_cost = 1.0;
    s.constraint_cost = 24.0;
    s.opt_noise = 0.002;
    s.constraint_noise = 0.004;
    s.oscillation_amplitude = 0.015;
    return Problem(Family::kRobustness, s, robustness_space(), MetricMode::kMaximize,
                   "accuracy");
  }
  throw ConfigError("problem.preset", "unknown preset '" + std::string(name) + "'");
}

TrialCurve Problem::curve_for(const Configuration& config, const SearchSpace& space) const {
  const Coordinates x(config, space);
  const Jitter jitter(config, settings_.seed);
  TrialCurve curve;
  curve.max_iterations = config.max_iterations;
  curve.opt_noise = settings_.opt_noise;
  curve.constraint_noise = settings_.constraint_noise;
  curve.constraint_cost = settings_.constraint_cost;

  if (family_ == Family::kFairness) {
    // Model complexity pushes both AUC and the fairness gap up.
    const double reg = 0.5 * (x.u("reg_alpha") + x.u("reg_lambda"));
    const double complexity = 0.5 * x.u("num_leaves") + 0.2 * (1.0 - x.u("min_child_samples")) +
                              0.15 * (1.0 - reg) + 0.15 * x.u("log_max_bin");
    const double lr_gap = x.u("learning_rate", 0.667) - 0.667;
    const double lr = x.raw("learning_rate", 0.1);

    curve.opt_start = 0.5;
    curve.opt_asymptote = 0.79 + 0.07 * complexity - 0.3 * lr_gap * lr_gap +
                          0.01 * (x.u("colsample_bytree") - 0.5) + 0.008 * (jitter(0) - 0.5);
    curve.opt_rate = 0.02 + 0.6 * std::sqrt(std::max(lr, 0.0));

    curve.constraint_asymptote = 0.15 + 0.22 * complexity + 0.06 * (jitter(1) - 0.5);
    curve.constraint_start = curve.constraint_asymptote + 0.15;
    curve.constraint_rate = 0.02 + 0.6 * curve.opt_rate;
    curve.oscillation_amplitude = settings_.oscillation_amplitude * (0.5 + jitter(2));
    curve.oscillation_period = 5.0 + 10.0 * jitter(3);
    curve.primary_cost = settings_.primary_cost * (0.75 + 0.5 * x.u("num_leaves"));
  } else {
    // Large learning rates and weak regularization fit better but fail more
    // perturbation tests.
    const double u_lr = x.u("learning_rate");
    const double lr_gap = u_lr - 0.5;
    curve.opt_start = 0.5;
    curve.opt_asymptote = 0.90 - 0.25 * lr_gap * lr_gap + 0.01 * x.u("weight_decay") -
                          0.01 * x.u("warmup_ratio") + 0.006 * (jitter(0) - 0.5);
    curve.opt_rate = 0.02 + 0.1 * u_lr;

    curve.constraint_asymptote = 0.15 + 0.10 * u_lr + 0.05 * (1.0 - x.u("weight_decay")) +
                                 0.03 * (1.0 - x.u("per_device_train_batch_size")) +
                                 0.04 * (jitter(1) - 0.5);
    curve.constraint_start = curve.constraint_asymptote + 0.12;
    curve.constraint_rate = curve.opt_rate;
    curve.oscillation_amplitude = settings_.oscillation_amplitude * (0.5 + jitter(2));
    curve.oscillation_period = 6.0 + 12.0 * jitter(3);
    curve.primary_cost =
        settings_.primary_cost * (0.85 + 0.3 * x.u("per_device_train_batch_size"));
  }
  curve.validate();
  return curve;
}

}  // namespace ace
