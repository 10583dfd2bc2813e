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

#include "asyncopt/harness/experiment.hpp"

#include <fstream>
#include <memory>
#include <nlohmann/json.hpp>
#include <sstream>

#include "asyncopt/bo/bayes_opt.hpp"
#include "asyncopt/error.hpp"
#include "asyncopt/opt/async_optimizer.hpp"
#include "asyncopt/qubo/json.hpp"
#include "asyncopt/qubo/schedule.hpp"
#include "asyncopt/sched/scheduling_runtime.hpp"
#include "asyncopt/seed.hpp"

namespace asyncopt::harness {

using graph::ClockKind;
using graph::RunMode;
using ojson = nlohmann::ordered_json;

namespace {

constexpr std::uint64_t kSearchStream = 1;

double millis(Duration d) { return std::chrono::duration<double, std::milli>(d).count(); }
double seconds(Duration d) { return std::chrono::duration<double>(d).count(); }

std::unique_ptr<SearchAlgorithm> make_search(const ExperimentConfig& cfg) {
  bo::SearchSpace space(std::vector<double>(std::begin(qubo::kCandidateLo), std::end(qubo::kCandidateLo)),
                        std::vector<double>(std::begin(qubo::kCandidateHi), std::end(qubo::kCandidateHi)));
  return std::make_unique<bo::BayesianOptimizer>(space, bo::BayesOptConfig{.seed = derive_seed(cfg.seed, kSearchStream)});
}

sched::EvalConfig eval_config(const ExperimentConfig& cfg, sched::RequestMode mode) {
  sched::EvalConfig e;
  e.problem = cfg.problem;
  e.latency = {*cfg.latency_min, *cfg.latency_max};
  e.solver = cfg.solver;
  e.seed = cfg.seed;
  e.step_duration = cfg.step_duration;
  e.mode = mode;
  return e;
}

bool is_sync(Scenario s) { return s == Scenario::SyncOk || s == Scenario::SyncDeadlock; }

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::ConfigError, "out: cannot write " + path.string());
  out << text;
}

void finish_rows(ScenarioResult& r) {
  for (const auto& row : r.iterations) {
    if (!r.best_y || row.y > *r.best_y) {
      r.best_y = row.y;
      r.best_x = row.x;
    }
  }
}

}  // namespace

std::string to_string(Scenario s) {
  switch (s) {
    case Scenario::SyncOk: return "sync-ok";
    case Scenario::SyncDeadlock: return "sync-deadlock";
    case Scenario::AsyncProbe: return "async-probe";
    case Scenario::BoQubo: return "bo-qubo";
  }
  return "?";
}

Scenario parse_scenario(std::string_view name) {
  for (Scenario s : {Scenario::SyncOk, Scenario::SyncDeadlock, Scenario::AsyncProbe, Scenario::BoQubo})
    if (to_string(s) == name) return s;
  throw Error(ErrorCode::ConfigError,
              "scenario: unknown value '" + std::string(name) + "' (sync-ok|sync-deadlock|async-probe|bo-qubo)");
}

ExperimentConfig resolve(ExperimentConfig cfg) {
  struct Defaults {
    std::uint64_t budget;
    std::uint32_t lo, hi;
    ClockKind clock;
  };
  Defaults d{};
  switch (cfg.scenario) {
    case Scenario::SyncOk: d = {5, 1, 1, ClockKind::RealTime}; break;
    case Scenario::SyncDeadlock: d = {5, 2, 5, ClockKind::RealTime}; break;
    case Scenario::AsyncProbe: d = {10, 1, 5, ClockKind::RealTime}; break;
    case Scenario::BoQubo: d = {25, 5, 20, ClockKind::Virtual}; break;
  }
  if (!cfg.budget) cfg.budget = d.budget;
  if (!cfg.latency_min) cfg.latency_min = cfg.latency_max ? std::min(d.lo, *cfg.latency_max) : d.lo;
  if (!cfg.latency_max) cfg.latency_max = std::max(d.hi, *cfg.latency_min);
  if (!cfg.clock) cfg.clock = d.clock;

  if (*cfg.budget == 0) throw Error(ErrorCode::ConfigError, "budget: must be positive");
  if (cfg.scenario == Scenario::SyncDeadlock && *cfg.latency_min < 2)
    throw Error(ErrorCode::ConfigError, "latency_min: sync-deadlock needs an evaluator latency of at least 2 steps");
  if (is_sync(cfg.scenario) && *cfg.clock == ClockKind::Virtual)
    throw Error(ErrorCode::ConfigError, "clock: the virtual clock needs an async scenario");
  graph::RunLimits limits;
  limits.watchdog_timeout = cfg.watchdog_timeout;
  limits.clock = *cfg.clock;
  limits.validate(is_sync(cfg.scenario) ? RunMode::SyncBarrier : RunMode::Async);
  cfg.sleep.validate();
  eval_config(cfg, sched::RequestMode::Probe).validate();
  return cfg;
}

ScenarioResult run_scenario(const ExperimentConfig& input) {
  ScenarioResult r;
  r.config = resolve(input);
  const ExperimentConfig& cfg = r.config;
  if (!cfg.out_dir.empty()) std::filesystem::create_directories(cfg.out_dir);

  std::shared_ptr<graph::TraceRecorder> recorder;
  if (cfg.write_trace && !cfg.out_dir.empty())
    recorder = std::make_shared<graph::JsonlTraceWriter>((cfg.out_dir / "trace.jsonl").string());

  graph::RunLimits limits;
  limits.watchdog_timeout = cfg.watchdog_timeout;
  limits.clock = *cfg.clock;

  graph::ProcessGraph g;
  const bool sync = is_sync(cfg.scenario);
  auto& evaluator = g.emplace<sched::SchedulingRuntime>(
      "scheduler", eval_config(cfg, sync ? sched::RequestMode::Blocking : sched::RequestMode::Probe));

  std::vector<opt::IterationRecord> records;
  if (sync) {
    auto& optimizer = g.emplace<opt::BlockingOptimizer>("optimizer", make_search(cfg), *cfg.budget);
    g.connect(optimizer.port("candidate_out"), evaluator.request_in(), graph::kDefaultChannelCapacity,
              qubo::kCandidateDims);
    g.connect(evaluator.result_out(), optimizer.port("result_in"), graph::kDefaultChannelCapacity,
              qubo::kCandidateDims);
    r.report = graph::run(g, RunMode::SyncBarrier, limits, recorder);
    records = optimizer.records();
    r.completed = optimizer.completed();
    r.done = graph::is_set(optimizer.variable("done").snapshot().value);
  } else {
    auto& optimizer = g.emplace<opt::AsyncOptimizer>("optimizer", make_search(cfg),
                                                     opt::AsyncOptConfig{.budget = *cfg.budget, .sleep = cfg.sleep});
    g.connect(optimizer.candidate_out(), evaluator.request_in(), graph::kDefaultChannelCapacity, qubo::kCandidateDims);
    g.connect(evaluator.result_out(), optimizer.result_in(), graph::kDefaultChannelCapacity, qubo::kCandidateDims);
    r.report = graph::run(g, RunMode::Async, limits, recorder);
    records = optimizer.records();
    r.completed = optimizer.completed();
    r.done = optimizer.done();
    r.probe_attempts = optimizer.probe_attempts();
    r.total_probes = optimizer.total_probes();
    if (optimizer.failure()) r.report.process_errors.push_back("optimizer: " + *optimizer.failure());
  }

  const auto& evals = evaluator.records();
  for (std::size_t i = 0; i < records.size(); ++i) {
    const auto& rec = records[i];
    r.sleeps += rec.sleeps;
    r.iterations.push_back({rec.iter, rec.x, rec.y, rec.y_best, rec.probe_attempts, rec.sleeps,
                            i < evals.size() ? evals[i].latency_steps : 0});
  }
  finish_rows(r);

  const bool clean = r.report.process_errors.empty() && !r.report.step_limit_reached;
  std::ostringstream why;
  if (cfg.scenario == Scenario::SyncDeadlock) {
    r.expected = r.report.deadlock_detected;
    why << (r.expected ? "deadlock detected as expected: " + r.report.deadlock_diagnostic.value_or("")
                       : "expected a deadlock but the run completed");
  } else {
    r.expected = !r.report.deadlock_detected && clean && r.done && r.completed == *cfg.budget;
    if (r.report.deadlock_detected)
      why << "unexpected deadlock: " << r.report.deadlock_diagnostic.value_or("");
    else if (!clean)
      why << "run failed: " << (r.report.process_errors.empty() ? "step limit reached" : r.report.process_errors[0]);
    else
      why << "completed " << r.completed << "/" << *cfg.budget << " evaluations";
  }
  r.outcome = why.str();

  if (!cfg.out_dir.empty()) {
    write_file(cfg.out_dir / "iterations.jsonl", iteration_jsonl(r.iterations));
    write_file(cfg.out_dir / "summary.json", summary_json(r));
    write_file(cfg.out_dir / "report.json", report_json(r));
  }
  return r;
}

std::string iteration_jsonl(const std::vector<IterationRow>& rows) {
  std::string out;
  for (const auto& row : rows) {
    ojson j;
    j["iter"] = row.iter;
    j["x"] = row.x;
    j["y"] = row.y;
    j["y_best"] = row.y_best;
    j["probe_attempts"] = row.probe_attempts;
    j["sleeps"] = row.sleeps;
    j["latency_steps"] = row.latency_steps;
    out += j.dump();
    out += '\n';
  }
  return out;
}

std::string summary_json(const ScenarioResult& r) {
  ojson j;
  j["best_x"] = r.best_x ? ojson(*r.best_x) : ojson(nullptr);
  j["best_y"] = r.best_y ? ojson(*r.best_y) : ojson(nullptr);
  j["wall_time"] = seconds(r.report.wall_time);
  j["deadlock_detected"] = r.report.deadlock_detected;
  return j.dump(2) + "\n";
}

std::string report_json(const ScenarioResult& r) {
  const ExperimentConfig& c = r.config;
  ojson j;
  j["scenario"] = to_string(c.scenario);
  j["expected_outcome"] = r.expected;
  j["outcome"] = r.outcome;
  ojson config;
  config["seed"] = c.seed;
  config["budget"] = *c.budget;
  config["watchdog_ms"] = millis(c.watchdog_timeout);
  config["sleep"] = {{"base_ms", millis(c.sleep.base_delay)}, {"factor", c.sleep.factor}, {"max_ms", millis(c.sleep.max_delay)}};
  config["latency"] = {{"min_steps", *c.latency_min}, {"max_steps", *c.latency_max}};
  config["step_ms"] = millis(c.step_duration);
  config["clock"] = graph::to_string(*c.clock);
  config["problem"] = nlohmann::json(c.problem);
  config["solver"] = {{"sweeps", c.solver.sweeps}, {"t_start", c.solver.t_start}, {"t_end", c.solver.t_end}};
  j["config"] = config;
  j["completed"] = r.completed;
  j["done"] = r.done;
  j["probe_attempts"] = r.probe_attempts;
  j["total_probes"] = r.total_probes;
  j["sleeps"] = r.sleeps;
  j["deadlock_detected"] = r.report.deadlock_detected;
  j["deadlock_diagnostic"] = r.report.deadlock_diagnostic ? ojson(*r.report.deadlock_diagnostic) : ojson(nullptr);
  j["step_limit_reached"] = r.report.step_limit_reached;
  j["process_errors"] = r.report.process_errors;
  ojson procs = ojson::array();
  for (std::size_t id = 0; id < r.report.process_names.size(); ++id) {
    procs.push_back({{"name", r.report.process_names[id]},
                     {"steps", r.report.steps_executed.count(id) ? r.report.steps_executed.at(id) : 0},
                     {"probes", r.report.probe_counts.count(id) ? r.report.probe_counts.at(id) : 0}});
  }
  j["processes"] = procs;
  j["barrier_steps"] = r.report.barrier_steps;
  j["wall_time"] = seconds(r.report.wall_time);
  j["virtual_time"] = seconds(r.report.virtual_time);
  return j.dump(2) + "\n";
}

}  // namespace asyncopt::harness
