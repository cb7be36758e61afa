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

#ifndef ACE_CORE_SEARCH_SPACE_HPP_
#define ACE_CORE_SEARCH_SPACE_HPP_

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "core/random.hpp"

namespace ace {

enum class ParamKind { kLogUniformReal, kUniformReal, kLogUniformInt, kChoice };

std::string_view param_kind_name(ParamKind kind);
std::optional<ParamKind> parse_param_kind(std::string_view name);

struct ParamSpec {
  std::string name;
  ParamKind kind = ParamKind::kUniformReal;
  double low = 0.0;
  double high = 1.0;
  std::vector<double> choices;
  std::optional<double> initial;
  // Marks the parameter whose value sets the trial's iteration count.
  bool iteration_axis = false;
  // Iterations per unit of the axis value (e.g. iterations per epoch).
  double iterations_per_unit = 1.0;

  void validate() const;
  bool contains(double value) const;
  // Position of `value` in [0, 1]: log scale for log kinds, choice index for
  // Choice.
  double normalized(double value) const;
};

struct Configuration {
  std::int64_t index = 0;
  std::vector<std::pair<std::string, double>> values;
  std::int64_t max_iterations = 1;

  std::optional<double> get(std::string_view name) const;
};

class SearchSpace {
 public:
  SearchSpace() = default;
  explicit SearchSpace(std::vector<ParamSpec> params);

  // Throws ConfigError when the space is empty, a name repeats, a spec is
  // malformed, or there is not exactly one iteration axis.
  void validate() const;

  const std::vector<ParamSpec>& params() const { return params_; }
  const ParamSpec* find(std::string_view name) const;
  std::int64_t iterations_for(double axis_value) const;

 private:
  std::vector<ParamSpec> params_;
};

// Draws one value for `spec` from `rng`.
double sample_param(const ParamSpec& spec, CounterRng& rng);

// One configuration; each parameter consumes draws from `rng` in order.
Configuration sample(const SearchSpace& space, CounterRng& rng, std::int64_t index = 0);

// The index-th configuration of the stream for `seed`. Each parameter draw is
// keyed by (seed, index, parameter position), so entry i never depends on
// how many entries were generated before it.
Configuration configuration_at(const SearchSpace& space, std::uint64_t seed, std::int64_t index);

std::vector<Configuration> sequence_for_seed(const SearchSpace& space, std::uint64_t seed,
                                             std::int64_t count);

}  // namespace ace

#endif  // ACE_CORE_SEARCH_SPACE_HPP_
