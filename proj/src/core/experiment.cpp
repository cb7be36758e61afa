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

#include "core/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cctype>
#include <exception>
#include <functional>
#include <fstream>
#include <iomanip>
#include <mutex>
#include <numeric>
#include <set>
#include <sstream>
#include <thread>

#include "core/csv.hpp"
#include "core/errors.hpp"
#include "json.hpp"

namespace ace {
namespace {

using nlohmann::json;

// Typed accessors over one JSON object that remember the key path for error
// messages and reject keys nobody asked about.
class ObjectReader {
 public:
  ObjectReader(const json& node, std::string path) : node_(node), path_(std::move(path)) {
    if (!node_.is_object()) throw ConfigError(path_.empty() ? "<root>" : path_, "expected an object");
  }

  std::string key_path(std::string_view key) const {
    return path_.empty() ? std::string(key) : path_ + "." + std::string(key);
  }

  bool has(std::string_view key) {
    seen_.insert(std::string(key));
    return node_.contains(key);
  }

  const json& at(std::string_view key) {
    seen_.insert(std::string(key));
    auto it = node_.find(key);
    if (it == node_.end()) throw ConfigError(key_path(key), "missing required key");
    return *it;
  }

  double number(std::string_view key, std::optional<double> fallback = std::nullopt) {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError(key_path(key), "missing required key");
    }
    const json& v = at(key);
    if (!v.is_number()) throw ConfigError(key_path(key), "expected a number");
    const double d = v.get<double>();
    if (!std::isfinite(d)) throw ConfigError(key_path(key), "expected a finite number");
    return d;
  }

  std::int64_t integer(std::string_view key, std::optional<std::int64_t> fallback = std::nullopt) {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError(key_path(key), "missing required key");
    }
    const json& v = at(key);
    if (!v.is_number_integer()) throw ConfigError(key_path(key), "expected an integer");
    return v.get<std::int64_t>();
  }

  bool boolean(std::string_view key, bool fallback) {
    if (!has(key)) return fallback;
    const json& v = at(key);
    if (!v.is_boolean()) throw ConfigError(key_path(key), "expected true or false");
    return v.get<bool>();
  }

  std::string string(std::string_view key, std::optional<std::string> fallback = std::nullopt) {
    if (!has(key)) {
      if (fallback) return *fallback;
      throw ConfigError(key_path(key), "missing required key");
    }
    const json& v = at(key);
    if (!v.is_string()) throw ConfigError(key_path(key), "expected a string");
    return v.get<std::string>();
  }

  // Call after all reads.
  void reject_unknown() const {
    for (auto it = node_.begin(); it != node_.end(); ++it) {
      if (!seen_.count(it.key())) throw ConfigError(key_path(it.key()), "unknown key");
    }
  }

 private:
  const json& node_;
  std::string path_;
  std::set<std::string> seen_;
};

template <typename Fn>
void rethrow_as_config(const std::string& key, Fn&& fn) {
  try {
    fn();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(key, e.what());
  }
}

Problem parse_problem(const json& node) {
  ObjectReader r(node, "problem");
  Problem problem = Problem::preset(r.string("preset"));
  ProblemSettings& s = problem.settings();
  s.threshold = r.number("threshold", s.threshold);
  s.primary_cost = r.number("primary_cost", s.primary_cost);
  s.constraint_cost = r.number("constraint_cost", s.constraint_cost);
  s.opt_noise = r.number("opt_noise", s.opt_noise);
  s.constraint_noise = r.number("constraint_noise", s.constraint_noise);
  s.oscillation_amplitude = r.number("oscillation_amplitude", s.oscillation_amplitude);
  const std::int64_t seed = r.integer("seed", static_cast<std::int64_t>(s.seed));
  if (seed < 0) throw ConfigError("problem.seed", "must be >= 0");
  s.seed = static_cast<std::uint64_t>(seed);
  r.reject_unknown();
  if (!(s.primary_cost > 0.0)) throw ConfigError("problem.primary_cost", "must be > 0");
  if (!(s.constraint_cost >= 0.0)) throw ConfigError("problem.constraint_cost", "must be >= 0");
  if (s.opt_noise < 0.0) throw ConfigError("problem.opt_noise", "must be >= 0");
  if (s.constraint_noise < 0.0) throw ConfigError("problem.constraint_noise", "must be >= 0");
  if (s.oscillation_amplitude < 0.0) {
    throw ConfigError("problem.oscillation_amplitude", "must be >= 0");
  }
  return problem;
}

SearchSpace parse_space(const json& node) {
  if (!node.is_array()) throw ConfigError("space", "expected an array of parameters");
  std::vector<ParamSpec> params;
  for (std::size_t i = 0; i < node.size(); ++i) {
    const std::string path = "space[" + std::to_string(i) + "]";
    ObjectReader r(node[i], path);
    ParamSpec p;
    p.name = r.string("name");
    const std::string kind = r.string("kind");
    const auto parsed = parse_param_kind(kind);
    if (!parsed) throw ConfigError(r.key_path("kind"), "unknown kind '" + kind + "'");
    p.kind = *parsed;
    if (p.kind == ParamKind::kChoice) {
      const json& choices = r.at("choices");
      if (!choices.is_array()) throw ConfigError(r.key_path("choices"), "expected an array");
      for (const json& c : choices) {
        if (!c.is_number()) throw ConfigError(r.key_path("choices"), "choices must be numbers");
        p.choices.push_back(c.get<double>());
      }
    } else {
      p.low = r.number("low");
      p.high = r.number("high");
    }
    if (r.has("initial")) p.initial = r.number("initial");
    p.iteration_axis = r.boolean("iteration_axis", false);
    p.iterations_per_unit = r.number("iterations_per_unit", 1.0);
    r.reject_unknown();
    rethrow_as_config(path, [&] { p.validate(); });
    params.push_back(std::move(p));
  }
  SearchSpace space(std::move(params));
  space.validate();
  return space;
}

std::int64_t max_iterations_of(const SearchSpace& space) {
  for (const auto& p : space.params()) {
    if (!p.iteration_axis) continue;
    const double top = p.kind == ParamKind::kChoice
                           ? *std::max_element(p.choices.begin(), p.choices.end())
                           : p.high;
    return space.iterations_for(top);
  }
  return 1;
}

bool safe_name(const std::string& name) {
  if (name.empty() || name == "." || name == "..") return false;
  return std::all_of(name.begin(), name.end(), [](char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-' || c == '.';
  });
}

SchedulerSpec parse_arm(const json& node, const std::string& path, std::int64_t default_max_t) {
  ObjectReader r(node, path);
  SchedulerSpec spec;
  spec.name = r.string("name");
  if (!safe_name(spec.name)) {
    throw ConfigError(r.key_path("name"), "must be non-empty and use only [A-Za-z0-9_.-]");
  }
  const std::string type = r.string("type");
  if (type == "ace") {
    spec.type = SchedulerType::kAce;
    spec.ace.truncation_percentage = r.number("truncation_percentage", 0.25);
    if (!(spec.ace.truncation_percentage > 0.0 && spec.ace.truncation_percentage < 1.0)) {
      throw ConfigError(r.key_path("truncation_percentage"), "must lie in (0, 1)");
    }
    spec.ace.low_overhead_gate = r.boolean("low_overhead_gate", true);
    const std::string stopping = r.string("stopping_mode", "stratum");
    if (stopping == "stratum") {
      spec.ace.stopping_mode = StoppingMode::kStratum;
    } else if (stopping == "hard") {
      spec.ace.stopping_mode = StoppingMode::kHard;
    } else {
      throw ConfigError(r.key_path("stopping_mode"), "expected 'stratum' or 'hard'");
    }
    const std::string interval = r.string("interval_mode", "adaptive");
    if (interval == "adaptive") {
      spec.ace.interval_mode = IntervalMode::kAdaptive;
    } else if (interval == "fixed_one") {
      spec.ace.interval_mode = IntervalMode::kFixedOne;
    } else if (interval == "fixed_full") {
      spec.ace.interval_mode = IntervalMode::kFixedFull;
    } else {
      throw ConfigError(r.key_path("interval_mode"),
                        "expected 'adaptive', 'fixed_one' or 'fixed_full'");
    }
  } else if (type == "asha") {
    spec.type = SchedulerType::kAsha;
    spec.asha.reduction_factor = r.integer("reduction_factor", 4);
    spec.asha.grace_period = r.integer("grace_period", 1);
    spec.asha.max_time_units = r.integer("max_time_units", default_max_t);
    if (r.has("brackets") && r.integer("brackets") != 1) {
      throw ConfigError(r.key_path("brackets"), "only a single bracket is supported");
    }
    spec.asha.stratum_mode = r.boolean("stratum_mode", false);
    spec.asha.constraint_interval_fixed = r.boolean("constraint_interval_fixed", true);
    spec.asha.constraint_callback = r.boolean("constraint_callback", false);
    if (spec.asha.reduction_factor < 2) {
      throw ConfigError(r.key_path("reduction_factor"), "must be >= 2");
    }
    if (spec.asha.grace_period < 1) throw ConfigError(r.key_path("grace_period"), "must be >= 1");
    if (spec.asha.max_time_units < spec.asha.grace_period) {
      throw ConfigError(r.key_path("max_time_units"), "must be >= grace_period");
    }
  } else if (type == "no_stopping") {
    spec.type = SchedulerType::kNoStopping;
    spec.constraint_callback = r.boolean("constraint_callback", false);
  } else {
    throw ConfigError(r.key_path("type"), "expected 'ace', 'asha' or 'no_stopping'");
  }
  r.reject_unknown();
  return spec;
}

void write_text_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << text;
  if (!out.flush()) throw IoError("failed writing '" + path.string() + "'");
}

void ensure_directory(const std::filesystem::path& dir) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec || !std::filesystem::is_directory(dir)) {
    throw IoError("cannot create output directory '" + dir.string() + "'");
  }
}

json optional_json(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json seed_json(const SeedResult& s) {
  return json{{"seed", s.seed},
              {"feasible_found", s.feasible_found},
              {"best_feasible_score", optional_json(s.best_feasible_score)},
              {"time_to_best", optional_json(s.time_to_best)},
              {"total_trials", s.total_trials},
              {"interval_one", s.interval_one},
              {"interval_full", s.interval_full},
              {"constraint_evaluations", s.constraint_evaluations},
              {"post_hoc_evaluations", s.post_hoc_evaluations},
              {"elapsed", s.elapsed},
              {"measured_cost_ratio", optional_json(s.measured_cost_ratio)}};
}

json arm_json(const ArmSummary& arm, std::string_view metric) {
  json seeds = json::array();
  for (const auto& s : arm.seeds) seeds.push_back(seed_json(s));
  return json{{"arm", arm.name},
              {"metric", metric},
              {"seeds", seeds},
              {"aggregate",
               {{"mean_best_feasible_score", optional_json(arm.mean_best_feasible_score)},
                {"sd_best_feasible_score", optional_json(arm.sd_best_feasible_score)},
                {"mean_time_to_best", optional_json(arm.mean_time_to_best)},
                {"mean_total_trials", arm.mean_total_trials},
                {"mean_constraint_evaluations", arm.mean_constraint_evaluations},
                {"success_rate", arm.success_rate},
                {"interval_one_fraction", optional_json(arm.interval_one_fraction)}}}};
}

// Runs `jobs` closures on up to `workers` threads. The first exception wins.
void parallel_for(std::size_t jobs, std::int64_t workers, const std::function<void(std::size_t)>& fn) {
  std::size_t threads = workers > 0 ? static_cast<std::size_t>(workers)
                                    : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min(threads, jobs);
  if (threads <= 1) {
    for (std::size_t i = 0; i < jobs; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  std::vector<std::jthread> pool;
  for (std::size_t w = 0; w < threads; ++w) {
    pool.emplace_back([&] {
      for (std::size_t i = next++; i < jobs; i = next++) {
        try {
          fn(i);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      }
    });
  }
  pool.clear();
  if (failure) std::rethrow_exception(failure);
}

std::optional<double> mean_of(const std::vector<double>& xs) {
  if (xs.empty()) return std::nullopt;
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

ExperimentConfig parse_config(std::string_view json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("<root>", std::string("invalid JSON: ") + e.what());
  }
  ObjectReader r(root, "");
  ExperimentConfig config;
  config.problem = parse_problem(r.at("problem"));
  config.space = r.has("space") ? parse_space(r.at("space")) : config.problem.default_space();

  const std::int64_t max_t = max_iterations_of(config.space);
  const bool single = r.has("scheduler");
  const bool many = r.has("schedulers");
  if (single == many) throw ConfigError("schedulers", "give exactly one of 'scheduler' or 'schedulers'");
  if (single) {
    config.arms.push_back(parse_arm(r.at("scheduler"), "scheduler", max_t));
  } else {
    const json& arms = r.at("schedulers");
    if (!arms.is_array() || arms.empty()) {
      throw ConfigError("schedulers", "expected a non-empty array");
    }
    std::set<std::string> names;
    for (std::size_t i = 0; i < arms.size(); ++i) {
      const std::string path = "schedulers[" + std::to_string(i) + "]";
      config.arms.push_back(parse_arm(arms[i], path, max_t));
      if (!names.insert(config.arms.back().name).second) {
        throw ConfigError(path + ".name", "duplicate arm name");
      }
    }
  }

  config.budget = r.number("budget");
  if (!(config.budget > 0.0)) throw ConfigError("budget", "must be > 0");
  config.max_concurrent = r.integer("max_concurrent", 4);
  if (config.max_concurrent < 1) throw ConfigError("max_concurrent", "must be >= 1");

  const json& seeds = r.at("seeds");
  if (!seeds.is_array() || seeds.empty()) throw ConfigError("seeds", "expected a non-empty array");
  for (const json& s : seeds) {
    if (!s.is_number_integer() || s.get<std::int64_t>() < 0) {
      throw ConfigError("seeds", "seeds must be non-negative integers");
    }
    config.seeds.push_back(s.get<std::uint64_t>());
  }
  config.output_dir = r.string("output_dir", "ace-output");
  config.workers = r.integer("workers", 0);
  if (config.workers < 0) throw ConfigError("workers", "must be >= 0");
  r.reject_unknown();
  return config;
}

SchedulerSpec parse_scheduler_spec(std::string_view json_text,
                                   std::int64_t default_max_time_units) {
  json node;
  try {
    node = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("scheduler", std::string("invalid JSON: ") + e.what());
  }
  return parse_arm(node, "scheduler", default_max_time_units);
}

ExperimentConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read config '" + path.string() + "'");
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_config(buffer.str());
}

SeedResult seed_result(std::uint64_t seed, const ExperimentReport& report) {
  SeedResult s;
  s.seed = seed;
  s.feasible_found = report.feasible_found;
  s.best_feasible_score = report.best_feasible_score;
  s.time_to_best = report.time_to_best;
  s.total_trials = report.total_trials;
  s.interval_one = report.interval_one;
  s.interval_full = report.interval_full;
  s.constraint_evaluations = report.constraint_evaluations;
  s.post_hoc_evaluations = report.post_hoc_evaluations;
  s.elapsed = report.elapsed;
  s.measured_cost_ratio = report.measured_cost_ratio;
  return s;
}

ArmSummary summarize_arm(std::string name, std::vector<SeedResult> seeds) {
  ArmSummary arm;
  arm.name = std::move(name);
  arm.seeds = std::move(seeds);
  std::vector<double> best, time, trials, evals;
  std::int64_t one = 0, full = 0, found = 0;
  for (const auto& s : arm.seeds) {
    if (s.best_feasible_score) best.push_back(*s.best_feasible_score);
    if (s.time_to_best) time.push_back(*s.time_to_best);
    trials.push_back(static_cast<double>(s.total_trials));
    evals.push_back(static_cast<double>(s.constraint_evaluations));
    one += s.interval_one;
    full += s.interval_full;
    found += s.feasible_found ? 1 : 0;
  }
  arm.mean_best_feasible_score = mean_of(best);
  if (best.size() >= 2) {
    double ss = 0.0;
    for (double b : best) ss += (b - *arm.mean_best_feasible_score) * (b - *arm.mean_best_feasible_score);
    arm.sd_best_feasible_score = std::sqrt(ss / static_cast<double>(best.size() - 1));
  }
  arm.mean_time_to_best = mean_of(time);
  arm.mean_total_trials = mean_of(trials).value_or(0.0);
  arm.mean_constraint_evaluations = mean_of(evals).value_or(0.0);
  arm.success_rate =
      arm.seeds.empty() ? 0.0 : static_cast<double>(found) / static_cast<double>(arm.seeds.size());
  if (one + full > 0) {
    arm.interval_one_fraction = static_cast<double>(one) / static_cast<double>(one + full);
  }
  return arm;
}

ExperimentReport run_arm(const ExperimentConfig& config, const SchedulerSpec& arm,
                         std::uint64_t seed) {
  auto scheduler = make_scheduler(arm, config.problem.constraint());
  SimulationOptions options;
  options.budget = config.budget;
  options.max_concurrent = config.max_concurrent;
  options.seed = seed;
  return run_experiment(config.problem, config.space, *scheduler, options);
}

void write_trace_csv(std::ostream& out, const ExperimentReport& report) {
  csv::write_row(out, {"trial_id", "iteration", "opt_metric", "constraint_value", "group",
                       "violation_amount", "sim_time", "action", "evaluate_constraint", "rank",
                       "group_size", "interval", "constraint_checkpoint", "iteration_metric",
                       "primary_cost", "constraint_cost"});
  for (const TraceRow& row : report.trace) {
    csv::write_row(out, {std::to_string(row.trial), std::to_string(row.iteration),
                         csv::format_double(row.opt_metric),
                         csv::format_optional(row.constraint_value),
                         std::string(group_name(row.group)),
                         csv::format_optional(row.violation_amount),
                         csv::format_double(row.sim_time), std::string(row_kind_name(row.kind)),
                         row.evaluate_constraint ? "1" : "0", std::to_string(row.rank),
                         std::to_string(row.group_size), csv::format_optional(row.interval),
                         csv::format_optional(row.constraint_checkpoint),
                         csv::format_double(row.iteration_metric),
                         csv::format_double(row.primary_cost),
                         csv::format_double(row.constraint_cost)});
  }
}

std::string format_summary_table(const std::vector<ArmSummary>& arms, std::string_view metric) {
  std::ostringstream out;
  auto fixed = [](const std::optional<double>& v, int precision) {
    if (!v) return std::string("-");
    std::ostringstream s;
    s << std::fixed << std::setprecision(precision) << *v;
    return s.str();
  };
  out << std::left << std::setw(26) << "arm" << std::right << std::setw(24)
      << ("best feasible " + std::string(metric)) << std::setw(14) << "time to best"
      << std::setw(14) << "total trials" << std::setw(14) << "constr evals" << std::setw(10)
      << "success" << std::setw(10) << "beta=1" << "\n";
  for (const auto& arm : arms) {
    std::string score = fixed(arm.mean_best_feasible_score, 5);
    if (arm.sd_best_feasible_score) score += " +- " + fixed(arm.sd_best_feasible_score, 5);
    out << std::left << std::setw(26) << arm.name << std::right << std::setw(24) << score
        << std::setw(14) << fixed(arm.mean_time_to_best, 1) << std::setw(14)
        << fixed(arm.mean_total_trials, 1) << std::setw(14)
        << fixed(arm.mean_constraint_evaluations, 1) << std::setw(10)
        << fixed(arm.success_rate, 2) << std::setw(10) << fixed(arm.interval_one_fraction, 2)
        << "\n";
  }
  return out.str();
}

RunArtifacts run_config(const ExperimentConfig& config) {
  ensure_directory(config.output_dir);
  const std::size_t n_seeds = config.seeds.size();
  const std::size_t jobs = config.arms.size() * n_seeds;
  std::vector<SeedResult> results(jobs);
  std::vector<std::filesystem::path> traces(jobs);
  for (const auto& arm : config.arms) ensure_directory(config.output_dir / arm.name);

  parallel_for(jobs, config.workers, [&](std::size_t job) {
    const SchedulerSpec& arm = config.arms[job / n_seeds];
    const std::uint64_t seed = config.seeds[job % n_seeds];
    const ExperimentReport report = run_arm(config, arm, seed);
    std::ostringstream trace;
    write_trace_csv(trace, report);
    traces[job] = config.output_dir / arm.name / ("trace_seed" + std::to_string(seed) + ".csv");
    write_text_file(traces[job], trace.str());
    results[job] = seed_result(seed, report);
  });

  RunArtifacts artifacts;
  artifacts.trace_files = traces;
  const std::string metric(config.problem.metric_name());
  for (std::size_t a = 0; a < config.arms.size(); ++a) {
    std::vector<SeedResult> seeds(results.begin() + static_cast<std::ptrdiff_t>(a * n_seeds),
                                  results.begin() + static_cast<std::ptrdiff_t>((a + 1) * n_seeds));
    artifacts.arms.push_back(summarize_arm(config.arms[a].name, std::move(seeds)));
    write_text_file(config.output_dir / config.arms[a].name / "summary.json",
                    arm_json(artifacts.arms.back(), metric).dump(2) + "\n");
  }

  std::ostringstream table;
  csv::write_row(table, {"arm", "seeds", "mean_best_feasible_score", "sd_best_feasible_score",
                         "mean_time_to_best", "mean_total_trials", "mean_constraint_evaluations",
                         "success_rate", "interval_one_fraction"});
  for (const auto& arm : artifacts.arms) {
    csv::write_row(table, {arm.name, std::to_string(arm.seeds.size()),
                           csv::format_optional(arm.mean_best_feasible_score),
                           csv::format_optional(arm.sd_best_feasible_score),
                           csv::format_optional(arm.mean_time_to_best),
                           csv::format_double(arm.mean_total_trials),
                           csv::format_double(arm.mean_constraint_evaluations),
                           csv::format_double(arm.success_rate),
                           csv::format_optional(arm.interval_one_fraction)});
  }
  artifacts.summary_csv = config.output_dir / "summary.csv";
  write_text_file(artifacts.summary_csv, table.str());

  artifacts.summary_table = format_summary_table(artifacts.arms, metric);
  artifacts.summary_text = config.output_dir / "summary.txt";
  write_text_file(artifacts.summary_text, artifacts.summary_table);
  return artifacts;
}

std::vector<SweepRow> truncation_sweep(const ExperimentConfig& config,
                                       const std::vector<double>& percentages,
                                       const std::optional<std::filesystem::path>& output) {
  auto base = std::find_if(config.arms.begin(), config.arms.end(),
                           [](const SchedulerSpec& s) { return s.type == SchedulerType::kAce; });
  if (base == config.arms.end()) {
    throw ConfigError("schedulers", "truncation sweep needs an arm of type 'ace'");
  }
  if (percentages.empty()) throw DomainError("truncation sweep needs at least one percentage");
  for (double p : percentages) {
    if (!(p > 0.0 && p < 1.0)) throw DomainError("truncation percentages must lie in (0, 1)");
  }

  const std::size_t n_seeds = config.seeds.size();
  std::vector<SeedResult> results(percentages.size() * n_seeds);
  parallel_for(results.size(), config.workers, [&](std::size_t job) {
    SchedulerSpec arm = *base;
    arm.ace.truncation_percentage = percentages[job / n_seeds];
    const std::uint64_t seed = config.seeds[job % n_seeds];
    results[job] = seed_result(seed, run_arm(config, arm, seed));
  });

  std::vector<SweepRow> rows;
  std::ostringstream out;
  csv::write_row(out, {"truncation_percentage", "mean_best_feasible_score", "mean_total_trials",
                       "success_rate"});
  for (std::size_t i = 0; i < percentages.size(); ++i) {
    std::vector<SeedResult> seeds(results.begin() + static_cast<std::ptrdiff_t>(i * n_seeds),
                                  results.begin() + static_cast<std::ptrdiff_t>((i + 1) * n_seeds));
    const ArmSummary s = summarize_arm(base->name, std::move(seeds));
    rows.push_back({percentages[i], s.mean_best_feasible_score, s.mean_total_trials,
                    s.success_rate});
    csv::write_row(out, {csv::format_double(percentages[i]),
                         csv::format_optional(s.mean_best_feasible_score),
                         csv::format_double(s.mean_total_trials),
                         csv::format_double(s.success_rate)});
  }
  const std::filesystem::path path = output.value_or(config.output_dir / "truncation_sweep.csv");
  if (path.has_parent_path()) ensure_directory(path.parent_path());
  write_text_file(path, out.str());
  return rows;
}

}  // namespace ace
