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

#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "asyncopt/graph/runtime.hpp"
#include "asyncopt/graph/sleep_policy.hpp"
#include "asyncopt/qubo/problem.hpp"
#include "asyncopt/qubo/qubo.hpp"

namespace asyncopt::harness {

using graph::Duration;

enum class Scenario { SyncOk, SyncDeadlock, AsyncProbe, BoQubo };

std::string to_string(Scenario s);                    // "sync-ok", ...
Scenario parse_scenario(std::string_view name);       // throws ConfigError

/// Unset optionals take the scenario default (see defaults_for).
struct ExperimentConfig {
  Scenario scenario = Scenario::BoQubo;
  std::uint64_t seed = 7;
  std::optional<std::uint64_t> budget;
  Duration watchdog_timeout = std::chrono::seconds(2);
  graph::SleepPolicy sleep;
  std::optional<std::uint32_t> latency_min;
  std::optional<std::uint32_t> latency_max;
  Duration step_duration = std::chrono::milliseconds(5);
  std::optional<graph::ClockKind> clock;
  qubo::SatelliteProblem problem;
  qubo::AnnealParams solver;
  std::filesystem::path out_dir;  // empty: no files
  bool write_trace = false;
};

/// Fills every optional with the scenario default and validates the result.
ExperimentConfig resolve(ExperimentConfig cfg);

struct IterationRow {
  std::uint64_t iter = 0;
  std::vector<double> x;
  double y = 0.0;
  double y_best = 0.0;
  std::uint64_t probe_attempts = 0;
  std::uint64_t sleeps = 0;
  std::uint32_t latency_steps = 0;
};

struct ScenarioResult {
  ExperimentConfig config;  // resolved
  graph::RunReport report;
  std::vector<IterationRow> iterations;
  std::uint64_t completed = 0;
  std::uint64_t probe_attempts = 0;  // empty probes by the optimizer
  std::uint64_t total_probes = 0;
  std::uint64_t sleeps = 0;
  bool done = false;
  std::optional<std::vector<double>> best_x;
  std::optional<double> best_y;
  bool expected = false;
  std::string outcome;  // one-line explanation
};

/// Builds and runs the scenario, then writes iterations.jsonl, summary.json
/// and report.json (and trace.jsonl if asked) under out_dir.
ScenarioResult run_scenario(const ExperimentConfig& cfg);

std::string iteration_jsonl(const std::vector<IterationRow>& rows);
std::string summary_json(const ScenarioResult& result);
std::string report_json(const ScenarioResult& result);

}  // namespace asyncopt::harness
