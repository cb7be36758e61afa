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

#include "core/search_space.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "core/errors.hpp"

namespace ace {
namespace {

bool is_log(ParamKind kind) {
  return kind == ParamKind::kLogUniformReal || kind == ParamKind::kLogUniformInt;
}

constexpr std::uint64_t kSequenceStream = 0x5ea7c11;

}  // namespace

std::string_view param_kind_name(ParamKind kind) {
  switch (kind) {
    case ParamKind::kLogUniformReal:
      return "loguniform";
    case ParamKind::kUniformReal:
      return "uniform";
    case ParamKind::kLogUniformInt:
      return "lograndint";
    case ParamKind::kChoice:
      return "choice";
  }
  return "unknown";
}

std::optional<ParamKind> parse_param_kind(std::string_view name) {
  for (ParamKind kind : {ParamKind::kLogUniformReal, ParamKind::kUniformReal,
                         ParamKind::kLogUniformInt, ParamKind::kChoice}) {
    if (param_kind_name(kind) == name) return kind;
  }
  return std::nullopt;
}

void ParamSpec::validate() const {
  if (name.empty()) throw ConfigError("name", "parameter name is empty");
  if (kind == ParamKind::kChoice) {
    if (choices.empty()) throw ConfigError(name, "choice list is empty");
    for (double c : choices) {
      if (!std::isfinite(c)) throw ConfigError(name, "choices must be finite");
    }
  } else {
    if (!std::isfinite(low) || !std::isfinite(high) || !(low < high)) {
      throw ConfigError(name, "requires finite low < high");
    }
    if (is_log(kind) && !(low > 0.0)) throw ConfigError(name, "log kinds require low > 0");
    if (kind == ParamKind::kLogUniformInt &&
        (low != std::floor(low) || high != std::floor(high))) {
      throw ConfigError(name, "integer bounds must be whole numbers");
    }
  }
  if (!(iterations_per_unit > 0.0) || !std::isfinite(iterations_per_unit)) {
    throw ConfigError(name, "iterations_per_unit must be > 0");
  }
  if (initial && !contains(*initial)) throw ConfigError(name, "initial value outside domain");
}

bool ParamSpec::contains(double value) const {
  switch (kind) {
    case ParamKind::kChoice:
      return std::find(choices.begin(), choices.end(), value) != choices.end();
    case ParamKind::kLogUniformInt:
      return value == std::floor(value) && value >= low && value <= high;
    default:
      return value >= low && value <= high;
  }
}

double ParamSpec::normalized(double value) const {
  if (kind == ParamKind::kChoice) {
    if (choices.size() < 2) return 0.0;
    auto it = std::find(choices.begin(), choices.end(), value);
    const auto pos = static_cast<double>(it - choices.begin());
    return std::clamp(pos / static_cast<double>(choices.size() - 1), 0.0, 1.0);
  }
  const double u = is_log(kind) ? std::log(value / low) / std::log(high / low)
                                : (value - low) / (high - low);
  return std::clamp(u, 0.0, 1.0);
}

std::optional<double> Configuration::get(std::string_view name) const {
  for (const auto& [key, value] : values) {
    if (key == name) return value;
  }
  return std::nullopt;
}

SearchSpace::SearchSpace(std::vector<ParamSpec> params) : params_(std::move(params)) {}

void SearchSpace::validate() const {
  if (params_.empty()) throw ConfigError("space", "search space is empty");
  std::set<std::string> names;
  int axes = 0;
  for (const auto& p : params_) {
    p.validate();
    if (!names.insert(p.name).second) throw ConfigError(p.name, "duplicate parameter name");
    if (p.iteration_axis) {
      ++axes;
      if (p.kind == ParamKind::kChoice) {
        for (double c : p.choices) {
          if (!(c > 0.0)) throw ConfigError(p.name, "iteration axis choices must be > 0");
        }
      } else if (!(p.high > 0.0)) {
        throw ConfigError(p.name, "iteration axis must allow positive values");
      }
    }
  }
  if (axes != 1) throw ConfigError("space", "exactly one parameter must be the iteration axis");
}

const ParamSpec* SearchSpace::find(std::string_view name) const {
  for (const auto& p : params_) {
    if (p.name == name) return &p;
  }
  return nullptr;
}

std::int64_t SearchSpace::iterations_for(double axis_value) const {
  for (const auto& p : params_) {
    if (p.iteration_axis) {
      const double iterations = std::ceil(axis_value * p.iterations_per_unit - 1e-9);
      return std::max<std::int64_t>(1, static_cast<std::int64_t>(iterations));
    }
  }
  throw ConfigError("space", "no iteration axis");
}

double sample_param(const ParamSpec& spec, CounterRng& rng) {
  const double u = rng.uniform();
  switch (spec.kind) {
    case ParamKind::kUniformReal:
      return std::clamp(spec.low + u * (spec.high - spec.low), spec.low, spec.high);
    case ParamKind::kLogUniformReal:
      return std::clamp(spec.low * std::exp(u * std::log(spec.high / spec.low)), spec.low,
                        spec.high);
    case ParamKind::kLogUniformInt: {
      // Real draw in log space over [low, high + 1), rounded down.
      const double v = spec.low * std::exp(u * std::log((spec.high + 1.0) / spec.low));
      return std::clamp(std::floor(v), spec.low, spec.high);
    }
    case ParamKind::kChoice: {
      const auto n = spec.choices.size();
      const auto i = std::min(n - 1, static_cast<std::size_t>(u * static_cast<double>(n)));
      return spec.choices[i];
    }
  }
  return spec.low;
}

Configuration sample(const SearchSpace& space, CounterRng& rng, std::int64_t index) {
  space.validate();
  Configuration config;
  config.index = index;
  for (const auto& p : space.params()) {
    const double v = sample_param(p, rng);
    config.values.emplace_back(p.name, v);
    if (p.iteration_axis) config.max_iterations = space.iterations_for(v);
  }
  return config;
}

Configuration configuration_at(const SearchSpace& space, std::uint64_t seed, std::int64_t index) {
  Configuration config;
  config.index = index;
  std::uint64_t position = 0;
  for (const auto& p : space.params()) {
    CounterRng rng{kSequenceStream, seed, static_cast<std::uint64_t>(index), position++};
    const double v = sample_param(p, rng);
    config.values.emplace_back(p.name, v);
    if (p.iteration_axis) config.max_iterations = space.iterations_for(v);
  }
  return config;
}

std::vector<Configuration> sequence_for_seed(const SearchSpace& space, std::uint64_t seed,
                                             std::int64_t count) {
  space.validate();
  if (count < 1) throw DomainError("sequence length must be >= 1");
  std::vector<Configuration> out;
  out.reserve(static_cast<std::size_t>(count));
  for (std::int64_t i = 0; i < count; ++i) out.push_back(configuration_at(space, seed, i));
  return out;
}

}  // namespace ace
