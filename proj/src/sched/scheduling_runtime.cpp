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

#include "asyncopt/sched/scheduling_runtime.hpp"

#include <sstream>

#include "asyncopt/error.hpp"
#include "asyncopt/qubo/schedule.hpp"
#include "asyncopt/seed.hpp"

namespace asyncopt::sched {

using namespace graph;

namespace {

constexpr std::uint64_t kLatencyStream = 0x1a7e;
constexpr std::uint64_t kSolverStream = 0x50fe;

}  // namespace

void EvalConfig::validate() const {
  problem.validate();
  solver.validate();
  if (latency.min_steps == 0) throw Error(ErrorCode::ConfigError, "latency.min_steps: must be positive");
  if (latency.max_steps < latency.min_steps)
    throw Error(ErrorCode::ConfigError, "latency.max_steps: must be >= latency.min_steps");
  if (step_duration < Duration::zero()) throw Error(ErrorCode::ConfigError, "step_duration: must be nonnegative");
}

std::uint64_t solver_seed(const EvalConfig& config, std::uint64_t index) {
  return derive_seed(derive_seed(config.seed, kSolverStream), index);
}

EvaluationRecord evaluate(const EvalConfig& config, std::span<const double> x, std::uint64_t index) {
  EvaluationRecord rec;
  rec.index = index;
  rec.x.assign(x.begin(), x.end());
  rec.solver_seed = solver_seed(config, index);
  qubo::SatelliteProblem problem = config.problem;
  qubo::AnnealParams params = config.solver;
  try {
    qubo::apply_candidate(x, problem, params);
    const qubo::PipelineResult out = qubo::run_pipeline(problem, params, rec.solver_seed);
    rec.score = out.schedule.score;
    rec.solver_steps = out.steps_taken;
  } catch (const Error& e) {
    rec.score = -1.0;
    rec.diagnostic = std::string(to_string(ErrorCode::MalformedRequest)) + ": " + e.what();
  }
  return rec;
}

SchedulingRuntime::SchedulingRuntime(std::string name, EvalConfig config)
    : Process(std::move(name)),
      config_(std::move(config)),
      latency_rng_(derive_seed(config_.seed, kLatencyStream)) {
  config_.validate();
  request_in_ = &add_in_port("request_in");
  result_out_ = &add_out_port("result_out");
}

std::optional<std::vector<double>> SchedulingRuntime::take_request(StepContext& ctx, bool& finished) {
  Token token;
  if (config_.mode == RequestMode::Blocking) {
    try {
      token = request_in_->recv();
    } catch (const Error& e) {
      if (e.code() != ErrorCode::Disconnected) throw;
      finished = true;
      return std::nullopt;
    }
  } else {
    if (!request_in_->probe().available()) {
      finished = request_in_->peer_stopped();
      return std::nullopt;
    }
    token = request_in_->recv();
  }
  if (const auto* p = token.get_if<ParamVector>()) return p->values;
  ctx.trace(TraceKind::Evaluation, "ignored non-request token " + describe(token));
  return std::nullopt;
}

StepOutcome SchedulingRuntime::step(StepContext& ctx) {
  if (config_.step_duration > Duration::zero()) ctx.work_for(config_.step_duration);

  if (remaining_ == 0) {
    bool finished = false;
    auto x = take_request(ctx, finished);
    if (finished) return StepOutcome::Finished;
    if (!x) return StepOutcome::Continue;
    current_ = std::move(*x);
    const std::uint64_t span = config_.latency.max_steps - config_.latency.min_steps + 1ULL;
    latency_ = config_.latency.min_steps + static_cast<std::uint32_t>(latency_rng_() % span);
    remaining_ = latency_;
    requested_at_ = ctx.now();
  }

  if (--remaining_ > 0) return StepOutcome::Continue;

  EvaluationRecord rec = evaluate(config_, current_, counter_++);
  rec.latency_steps = latency_;
  rec.requested_at = requested_at_;
  rec.replied_at = ctx.now();
  std::ostringstream detail;
  detail << "request " << rec.index << " latency " << rec.latency_steps << " y " << rec.score;
  if (rec.diagnostic) detail << " (" << *rec.diagnostic << ")";
  ctx.trace(TraceKind::Evaluation, detail.str());
  try {
    result_out_->send(ResultTuple{current_, rec.score});
  } catch (const Error& e) {
    if (e.code() != ErrorCode::Disconnected) throw;
    records_.push_back(std::move(rec));
    return StepOutcome::Finished;  // requester is gone
  }
  records_.push_back(std::move(rec));
  return StepOutcome::Continue;
}

}  // namespace asyncopt::sched
