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

#include "asyncopt/opt/async_optimizer.hpp"

#include <algorithm>
#include <cstring>
#include <sstream>
#include <thread>

#include "asyncopt/error.hpp"

namespace asyncopt::opt {

using namespace graph;

namespace {

// Echo check: bitwise, so -0.0 vs 0.0 and NaN payloads count as mismatches.
bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && (a.empty() || std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0);
}

std::string format_vector(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(17);
  os << '[';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? ", " : "") << v[i];
  os << ']';
  return os.str();
}

}  // namespace

std::string to_string(LoopAction::Kind kind) {
  switch (kind) {
    case LoopAction::Kind::Stopped: return "Stopped";
    case LoopAction::Kind::Paused: return "Paused";
    case LoopAction::Kind::Slept: return "Slept";
    case LoopAction::Kind::Forwarded: return "Forwarded";
    case LoopAction::Kind::Suggested: return "Suggested";
    case LoopAction::Kind::Finished: return "Finished";
    case LoopAction::Kind::Rejected: return "Rejected";
  }
  return "?";
}

std::string describe(const LoopAction& action) {
  std::ostringstream os;
  os << to_string(action.kind);
  switch (action.kind) {
    case LoopAction::Kind::Slept:
    case LoopAction::Kind::Paused:
      os << ' ' << std::chrono::duration<double, std::milli>(action.slept).count() << "ms";
      break;
    case LoopAction::Kind::Forwarded:
    case LoopAction::Kind::Rejected:
      if (action.result) os << " x=" << format_vector(action.result->param) << " y=" << action.result->score;
      break;
    case LoopAction::Kind::Suggested:
      os << " x=" << format_vector(action.suggestion);
      break;
    default:
      break;
  }
  return os.str();
}

void AsyncOptConfig::validate() const {
  if (budget == 0) throw Error(ErrorCode::ConfigError, "budget: must be positive");
  sleep.validate();
}

AsyncOptimizer::AsyncOptimizer(std::string name, std::unique_ptr<SearchAlgorithm> search, AsyncOptConfig config)
    : Process(std::move(name)), search_(std::move(search)), config_(config) {
  if (!search_) throw Error(ErrorCode::ConfigError, "search: no algorithm given");
  config_.validate();
  candidate_out_ = &add_out_port("candidate_out");
  result_in_ = &add_in_port("result_in");
  done_ = &add_variable("done", flag_token(false));
}

bool AsyncOptimizer::done() const { return is_set(done_->snapshot().value); }

void AsyncOptimizer::set_done(StepContext& ctx) {
  done_->write(flag_token(true));
  done_at_ = ctx.now();
}

LoopAction AsyncOptimizer::fail(StepContext& ctx, std::string why) {
  failure_ = std::move(why);
  ctx.trace(TraceKind::Action, "failure: " + *failure_);
  finished_ = true;
  set_done(ctx);
  return {.kind = LoopAction::Kind::Finished};
}

LoopAction AsyncOptimizer::loop_step(StepContext& ctx) {
  if (finished_ || stopped_) return {.kind = stopped_ ? LoopAction::Kind::Stopped : LoopAction::Kind::Finished};

  // (a) management channel
  while (auto cmd = ctx.poll_command()) {
    if (*cmd == RuntimeCommand::Stop) {
      stopped_ = true;
      set_done(ctx);
      return {.kind = LoopAction::Kind::Stopped};
    }
    paused_ = *cmd == RuntimeCommand::Pause;
  }
  if (paused_) {
    const Duration d = config_.sleep.base_delay;
    ctx.sleep(d);
    return {.kind = LoopAction::Kind::Paused, .slept = d};
  }

  // (b) probe for the outstanding result
  if (in_flight_ > 0) {
    ++total_probes_;
    ++iter_probes_;
    if (!result_in_->probe().available()) {
      if (result_in_->peer_stopped())
        return fail(ctx, "evaluator stopped with " + std::to_string(in_flight_) + " candidate(s) in flight");
      const Duration d = config_.sleep.delay(empty_streak_++);
      ++probe_attempts_;
      ++iter_sleeps_;
      ctx.sleep(d);
      return {.kind = LoopAction::Kind::Slept, .slept = d};
    }
    empty_streak_ = 0;
    Token token;
    try {
      token = result_in_->recv();
    } catch (const Error& e) {
      return fail(ctx, e.what());
    }
    --in_flight_;
    const auto* result = token.get_if<ResultTuple>();
    if (result == nullptr || !pending_ || !same_bits(result->param, *pending_)) {
      ++rejected_;
      pending_.reset();
      LoopAction rejected{.kind = LoopAction::Kind::Rejected};
      if (result) rejected.result = *result;
      ctx.trace(TraceKind::Action, "echo mismatch: got " + describe(token));
      return rejected;
    }
    pending_.reset();
    search_->update(result->param, result->score);
    ++completed_;
    y_best_ = y_best_ ? std::max(*y_best_, result->score) : result->score;
    records_.push_back({completed_, result->param, result->score, *y_best_, iter_probes_, iter_sleeps_});
    iter_probes_ = 0;
    iter_sleeps_ = 0;
    return {.kind = LoopAction::Kind::Forwarded, .result = *result};
  }

  // (c) budget exhausted
  if (completed_ == config_.budget) {
    finished_ = true;
    set_done(ctx);
    return {.kind = LoopAction::Kind::Finished};
  }

  // (d) emit the next candidate
  std::vector<double> x = search_->suggest();
  try {
    candidate_out_->send(ParamVector{x});
  } catch (const Error& e) {
    return fail(ctx, e.what());
  }
  ++in_flight_;
  pending_ = x;
  return {.kind = LoopAction::Kind::Suggested, .suggestion = std::move(x)};
}

StepOutcome AsyncOptimizer::step(StepContext& ctx) {
  LoopAction action = loop_step(ctx);
  actions_.push_back(action.kind);
  ctx.trace(TraceKind::Action, describe(action));
  return (finished_ || stopped_) ? StepOutcome::Finished : StepOutcome::Continue;
}

BlockingOptimizer::BlockingOptimizer(std::string name, std::unique_ptr<SearchAlgorithm> search,
                                     std::uint64_t budget)
    : Process(std::move(name)), search_(std::move(search)), budget_(budget) {
  if (!search_) throw Error(ErrorCode::ConfigError, "search: no algorithm given");
  if (budget_ == 0) throw Error(ErrorCode::ConfigError, "budget: must be positive");
  add_out_port("candidate_out");
  add_in_port("result_in");
  add_variable("done", flag_token(false));
}

StepOutcome BlockingOptimizer::step(StepContext& ctx) {
  if (completed_ == budget_) {
    variable("done").write(flag_token(true));
    return StepOutcome::Finished;
  }
  std::vector<double> x = search_->suggest();
  port("candidate_out").send(ParamVector{x});
  const Token token = port("result_in").recv();
  const auto& result = token.as<ResultTuple>();
  search_->update(result.param, result.score);
  ++completed_;
  y_best_ = y_best_ ? std::max(*y_best_, result.score) : result.score;
  records_.push_back({completed_, result.param, result.score, *y_best_, 0, 0});
  ctx.trace(TraceKind::Action, "Forwarded y=" + std::to_string(result.score));
  return StepOutcome::Continue;
}

AwaitResult await_done(const RefPort& done, Duration poll_interval, Duration timeout) {
  using clock = std::chrono::steady_clock;
  if (poll_interval <= Duration::zero()) throw Error(ErrorCode::ConfigError, "poll_interval: must be positive");
  const auto start = clock::now();
  const auto deadline = start + timeout;
  AwaitResult out;
  for (auto next = start;; next += poll_interval) {
    ++out.polls;
    const bool set = is_set(read_ref(done).value);
    out.observed_at = clock::now();
    if (set) {
      out.status = AwaitResult::Status::Finished;
      return out;
    }
    if (out.observed_at >= deadline) return out;
    std::this_thread::sleep_until(std::min(next + poll_interval, deadline));
  }
}

}  // namespace asyncopt::opt
