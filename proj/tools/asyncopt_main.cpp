// Copyright 2026 The asyncopt Authors. All Rights Reserved.
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
// =============================================================================

// Command-line entry point: asyncopt run --scenario ... --out DIR

#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "asyncopt/error.hpp"
#include "asyncopt/harness/experiment.hpp"
#include "asyncopt/qubo/json.hpp"

namespace {

constexpr int kExitExpected = 0;
constexpr int kExitUnexpected = 1;
constexpr int kExitConfig = 2;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw asyncopt::Error(asyncopt::ErrorCode::ConfigError, "problem-json: cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

int main(int argc, char** argv) {
  using namespace asyncopt;
  using std::chrono::milliseconds;

  CLI::App app{"Asynchronous optimization runtime: blocking/probing scenarios and the BO/QUBO experiment"};
  app.require_subcommand(1);
  CLI::App* run = app.add_subcommand("run", "Run one scenario and write reports");

  std::string scenario;
  std::uint64_t seed = 7;
  std::optional<std::uint64_t> budget;
  std::int64_t watchdog_ms = 2000;
  double sleep_ms = 10.0;
  double sleep_factor = 1.0;
  std::optional<double> sleep_max_ms;
  std::optional<std::uint32_t> latency_min, latency_max;
  double step_ms = 5.0;
  std::optional<std::string> clock;
  std::optional<std::uint32_t> sweeps;
  std::string out;
  std::string problem_json;
  bool trace = false;

  auto env = [](const char* name) { return std::string("ASYNCOPT_") + name; };
  run->add_option("--scenario", scenario, "sync-ok | sync-deadlock | async-probe | bo-qubo")
      ->required()
      ->envname(env("SCENARIO"));
  run->add_option("--seed", seed, "Experiment seed")->envname(env("SEED"));
  run->add_option("--budget", budget, "Number of evaluations")->envname(env("BUDGET"));
  run->add_option("--watchdog-ms", watchdog_ms, "Deadlock watchdog timeout")->envname(env("WATCHDOG_MS"));
  run->add_option("--sleep-ms", sleep_ms, "Sleep before re-probing an empty result port")->envname(env("SLEEP_MS"));
  run->add_option("--sleep-factor", sleep_factor, "Backoff factor per consecutive empty probe")
      ->envname(env("SLEEP_FACTOR"));
  run->add_option("--sleep-max-ms", sleep_max_ms, "Backoff cap (default: --sleep-ms)")->envname(env("SLEEP_MAX_MS"));
  run->add_option("--latency-min", latency_min, "Evaluator latency lower bound, in steps")
      ->envname(env("LATENCY_MIN"));
  run->add_option("--latency-max", latency_max, "Evaluator latency upper bound, in steps")
      ->envname(env("LATENCY_MAX"));
  run->add_option("--step-ms", step_ms, "Modeled duration of one evaluator step")->envname(env("STEP_MS"));
  run->add_option("--clock", clock, "real | virtual (default: virtual for bo-qubo)")->envname(env("CLOCK"));
  run->add_option("--sweeps", sweeps, "Annealing sweeps per evaluation")->envname(env("SWEEPS"));
  run->add_option("--out", out, "Output directory for reports")->envname(env("OUT"));
  run->add_option("--problem-json", problem_json, "Satellite problem instance (JSON)")->envname(env("PROBLEM_JSON"));
  run->add_flag("--trace", trace, "Also write trace.jsonl")->envname(env("TRACE"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "ConfigError: " << e.what() << "\n";
    return kExitConfig;
  }

  try {
    harness::ExperimentConfig cfg;
    cfg.scenario = harness::parse_scenario(scenario);
    cfg.seed = seed;
    cfg.budget = budget;
    if (watchdog_ms <= 0) throw Error(ErrorCode::ConfigError, "watchdog-ms: must be positive");
    cfg.watchdog_timeout = milliseconds(watchdog_ms);
    auto to_duration = [](const char* flag, double ms) {
      if (!(ms >= 0.0)) throw Error(ErrorCode::ConfigError, std::string(flag) + ": must be nonnegative");
      return std::chrono::duration_cast<graph::Duration>(std::chrono::duration<double, std::milli>(ms));
    };
    cfg.sleep.base_delay = to_duration("sleep-ms", sleep_ms);
    cfg.sleep.factor = sleep_factor;
    cfg.sleep.max_delay = to_duration("sleep-max-ms", sleep_max_ms.value_or(sleep_ms));
    cfg.latency_min = latency_min;
    cfg.latency_max = latency_max;
    cfg.step_duration = to_duration("step-ms", step_ms);
    if (clock) {
      if (*clock == "real")
        cfg.clock = graph::ClockKind::RealTime;
      else if (*clock == "virtual")
        cfg.clock = graph::ClockKind::Virtual;
      else
        throw Error(ErrorCode::ConfigError, "clock: expected 'real' or 'virtual', got '" + *clock + "'");
    }
    if (sweeps) cfg.solver.sweeps = *sweeps;
    if (!problem_json.empty()) cfg.problem = qubo::parse_problem(read_file(problem_json));
    cfg.out_dir = out;
    cfg.write_trace = trace;

    const harness::ScenarioResult r = harness::run_scenario(cfg);
    std::cout << harness::to_string(r.config.scenario) << ": " << (r.expected ? "expected" : "UNEXPECTED")
              << " outcome, " << r.outcome << "\n";
    if (r.best_y) std::cout << "best_y " << *r.best_y << " after " << r.completed << " evaluations\n";
    if (!out.empty()) std::cout << "reports written to " << out << "\n";
    return r.expected ? kExitExpected : kExitUnexpected;
  } catch (const Error& e) {
    std::cerr << e.what() << "\n";
    return e.code() == ErrorCode::ConfigError ? kExitConfig : kExitUnexpected;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUnexpected;
  }
}
