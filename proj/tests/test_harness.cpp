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

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <nlohmann/json.hpp>
#include <sstream>
#include <string>

#include "asyncopt/error.hpp"
#include "asyncopt/harness/experiment.hpp"
#include "doctest.h"

using namespace asyncopt;
using namespace asyncopt::harness;
using namespace std::chrono_literals;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("asyncopt_test_" + name);
  fs::remove_all(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<nlohmann::json> jsonl(const fs::path& p) {
  std::vector<nlohmann::json> rows;
  std::istringstream in(slurp(p));
  for (std::string line; std::getline(in, line);) rows.push_back(nlohmann::json::parse(line));
  return rows;
}

int cli(const std::string& args) {
  const int status = std::system((std::string(ASYNCOPT_CLI) + " " + args + " > /dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

}  // namespace

TEST_CASE("scenario names and defaults") {
  CHECK(parse_scenario("bo-qubo") == Scenario::BoQubo);
  CHECK(to_string(Scenario::SyncDeadlock) == "sync-deadlock");
  CHECK_THROWS_WITH_AS(parse_scenario("fast"), doctest::Contains("scenario"), Error);

  ExperimentConfig c;
  c.scenario = Scenario::BoQubo;
  const auto r = resolve(c);
  CHECK(*r.budget == 25);
  CHECK(*r.latency_min == 5);
  CHECK(*r.latency_max == 20);
  CHECK(*r.clock == graph::ClockKind::Virtual);

  c.scenario = Scenario::SyncDeadlock;
  c.latency_min = 1;
  CHECK_THROWS_WITH_AS(resolve(c), doctest::Contains("latency_min"), Error);
  c.latency_min.reset();
  c.clock = graph::ClockKind::Virtual;
  CHECK_THROWS_WITH_AS(resolve(c), doctest::Contains("clock"), Error);
  c = {};
  c.budget = 0;
  CHECK_THROWS_WITH_AS(resolve(c), doctest::Contains("budget"), Error);
  c = {};
  c.latency_min = 4;
  c.latency_max = 3;
  CHECK_THROWS_AS(resolve(c), Error);
}

TEST_CASE("sync-ok completes and sync-deadlock reports the blocked recv") {
  ExperimentConfig c;
  c.scenario = Scenario::SyncOk;
  c.budget = 3;
  c.watchdog_timeout = 300ms;
  auto r = run_scenario(c);
  CHECK(r.expected);
  CHECK_FALSE(r.report.deadlock_detected);
  CHECK(r.iterations.size() == 3);

  c.scenario = Scenario::SyncDeadlock;
  r = run_scenario(c);
  CHECK(r.expected);
  REQUIRE(r.report.deadlock_detected);
  CHECK(r.report.deadlock_diagnostic->find("optimizer blocked in recv on optimizer.result_in") != std::string::npos);
  CHECK(r.report.wall_time < 300ms + 500ms);
}

TEST_CASE("async-probe finishes every evaluation") {
  ExperimentConfig c;
  c.scenario = Scenario::AsyncProbe;
  c.budget = 10;
  c.latency_min = 1;
  c.latency_max = 5;
  const auto r = run_scenario(c);
  CHECK(r.expected);
  CHECK_FALSE(r.report.deadlock_detected);
  CHECK(r.iterations.size() == 10);
  CHECK(r.total_probes >= 10);
  for (const auto& row : r.iterations) {
    CHECK(row.latency_steps >= 1);
    CHECK(row.latency_steps <= 5);
  }
}

TEST_CASE("bo-qubo writes reproducible, well-formed reports") {
  ExperimentConfig c;
  c.scenario = Scenario::BoQubo;
  c.seed = 7;
  c.out_dir = scratch("bo_a");
  const auto a = run_scenario(c);
  c.out_dir = scratch("bo_b");
  c.write_trace = true;
  const auto b = run_scenario(c);
  CHECK(a.expected);
  CHECK(b.expected);
  const std::string ja = slurp(a.config.out_dir / "iterations.jsonl");
  CHECK_FALSE(ja.empty());
  CHECK(ja == slurp(b.config.out_dir / "iterations.jsonl"));
  CHECK(fs::exists(b.config.out_dir / "trace.jsonl"));

  const auto rows = jsonl(a.config.out_dir / "iterations.jsonl");
  REQUIRE(rows.size() == 25);
  double max_y = -1e300;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(rows[i]["iter"] == i + 1);
    for (const char* key : {"x", "y", "y_best", "probe_attempts", "sleeps", "latency_steps"})
      CHECK(rows[i].contains(key));
    if (i > 0) CHECK(rows[i]["y_best"].get<double>() >= rows[i - 1]["y_best"].get<double>());
    max_y = std::max(max_y, rows[i]["y"].get<double>());
  }
  const auto summary = nlohmann::json::parse(slurp(a.config.out_dir / "summary.json"));
  CHECK(summary["best_y"].get<double>() == max_y);
  CHECK(summary["deadlock_detected"] == false);
  CHECK(summary["best_x"].size() == 2);
  const auto report = nlohmann::json::parse(slurp(a.config.out_dir / "report.json"));
  CHECK(report["scenario"] == "bo-qubo");
  CHECK(report["expected_outcome"] == true);

  c.seed = 8;
  c.out_dir = scratch("bo_c");
  c.write_trace = false;
  const auto other = run_scenario(c);
  CHECK(slurp(other.config.out_dir / "iterations.jsonl") != ja);
}

TEST_CASE("cli exit codes and environment overrides") {
  const fs::path out = scratch("cli");
  CHECK(cli("run --scenario sync-deadlock --watchdog-ms 200 --budget 2") == 0);
  CHECK(cli("run --scenario bo-qubo --budget 4 --out " + out.string()) == 0);
  CHECK(jsonl(out / "iterations.jsonl").size() == 4);

  CHECK(cli("run --scenario nope") == 2);
  CHECK(cli("run --scenario bo-qubo --budget 0") == 2);
  CHECK(cli("run --scenario bo-qubo --clock sideways") == 2);
  CHECK(cli("run") == 2);
  CHECK(cli("run --scenario sync-ok --budget 2 --latency-min 3 --watchdog-ms 200") == 1);

  const fs::path bad = out / "bad.json";
  std::ofstream(bad) << "{\n  \"n_satellites\": 3,\n  \"n_requests\": \n}\n";
  CHECK(cli("run --scenario bo-qubo --problem-json " + bad.string()) == 2);
  const fs::path good = out / "good.json";
  std::ofstream(good) << R"({"n_satellites": 2, "n_requests": 5, "view_height": 0.5, "turn_speed": 1.5, "seed": 3,
                            "qubo_weights": {"w_reward": 1, "w_penalty": 2}})";
  CHECK(cli("run --scenario bo-qubo --budget 3 --problem-json " + good.string() + " --out " + out.string()) == 0);
  const auto report = nlohmann::json::parse(slurp(out / "report.json"));
  CHECK(report["config"]["problem"]["n_requests"] == 5);

  ::setenv("ASYNCOPT_BUDGET", "2", 1);
  CHECK(cli("run --scenario bo-qubo --out " + out.string()) == 0);
  ::unsetenv("ASYNCOPT_BUDGET");
  CHECK(jsonl(out / "iterations.jsonl").size() == 2);
}
