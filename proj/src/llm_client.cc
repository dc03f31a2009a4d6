// Copyright 2026 The qaaug Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
// https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "qaaug/llm_client.h"

#include <algorithm>
#include <thread>

#include "qaaug/unicode.h"

namespace qaaug {

RetriesExhausted::RetriesExhausted(int attempts, std::string const& last_error)
    : LlmError("giving up after " + std::to_string(attempts) +
               " attempts: " + last_error),
      attempts_(attempts) {}

Timeout::Timeout(int attempts)
    : LlmError("request timed out (" + std::to_string(attempts) +
               " attempts)"),
      attempts_(attempts) {}

void LlmConfig::validate() const {
  if (model_name.empty()) throw std::invalid_argument("model name is empty");
  if (!(temperature >= 0.0)) {
    throw std::invalid_argument("temperature must be >= 0");
  }
  if (!(reanswer_temperature >= 0.0)) {
    throw std::invalid_argument("re-answer temperature must be >= 0");
  }
  if (max_output_tokens <= 0) {
    throw std::invalid_argument("max output tokens must be > 0");
  }
  if (request_timeout.count() <= 0) {
    throw std::invalid_argument("request timeout must be > 0");
  }
  if (max_retries < 0) throw std::invalid_argument("max retries must be >= 0");
  if (max_concurrent_requests < 1) {
    throw std::invalid_argument("max concurrent requests must be >= 1");
  }
}

std::int64_t estimate_tokens(std::string_view text) {
  auto const chars = static_cast<std::int64_t>(unicode::length(text));
  return (chars + 3) / 4;
}

std::chrono::milliseconds BackoffPolicy::upper_bound(int retry) const {
  auto delay = base;
  for (int i = 1; i < retry && delay < cap; ++i) delay *= 2;
  return std::min(delay, cap);
}

LlmClient::LlmClient(std::shared_ptr<ChatProvider> provider, LlmConfig config,
                     BackoffPolicy backoff, Sleeper sleeper)
    : provider_(std::move(provider)),
      config_(std::move(config)),
      backoff_(backoff),
      sleeper_(std::move(sleeper)),
      jitter_rng_(std::random_device{}()) {
  if (!provider_) throw std::invalid_argument("provider is null");
  config_.validate();
  if (!sleeper_) {
    sleeper_ = [](std::chrono::milliseconds d) {
      std::this_thread::sleep_for(d);
    };
  }
}

void LlmClient::acquire() {
  std::unique_lock lock(gate_mu_);
  gate_cv_.wait(lock,
                [this] { return in_flight_ < config_.max_concurrent_requests; });
  ++in_flight_;
  peak_in_flight_ = std::max(peak_in_flight_, in_flight_);
}

void LlmClient::release() {
  {
    std::lock_guard lock(gate_mu_);
    --in_flight_;
  }
  gate_cv_.notify_one();
}

int LlmClient::peak_in_flight() const {
  std::lock_guard lock(gate_mu_);
  return peak_in_flight_;
}

std::chrono::milliseconds LlmClient::jittered_delay(int retry) {
  auto const upper = backoff_.upper_bound(retry);
  std::lock_guard lock(rng_mu_);
  std::uniform_int_distribution<std::chrono::milliseconds::rep> dist(
      0, upper.count());
  return std::chrono::milliseconds(dist(jitter_rng_));
}

LlmExchange LlmClient::complete(PromptSpec const& prompt,
                                std::string_view request_key) {
  ChatRequest request;
  request.kind = prompt.kind;
  request.system = prompt.rendered_system;
  request.user = prompt.rendered_user;
  request.model = config_.model_name;
  request.temperature = prompt.kind == PromptKind::kReAnswer
                            ? config_.reanswer_temperature
                            : config_.temperature;
  request.max_tokens = config_.max_output_tokens;
  request.timeout = config_.request_timeout;
  request.request_key = std::string(request_key);

  auto const started = std::chrono::steady_clock::now();
  int const max_attempts = config_.max_retries + 1;
  std::string last_error;
  bool last_timed_out = false;
  for (int attempt = 1; attempt <= max_attempts; ++attempt) {
    if (attempt > 1) sleeper_(jittered_delay(attempt - 1));
    request.attempt = attempt;
    acquire();
    try {
      auto response = provider_->send(request);
      release();
      LlmExchange exchange;
      exchange.prompt = prompt;
      exchange.request_key = request.request_key;
      exchange.response_text = std::move(response.text);
      exchange.prompt_tokens = response.prompt_tokens;
      exchange.completion_tokens = response.completion_tokens;
      exchange.latency = std::chrono::duration_cast<std::chrono::milliseconds>(
          std::chrono::steady_clock::now() - started);
      exchange.attempt_count = attempt;
      return exchange;
    } catch (TransientError const& e) {
      release();
      last_error = e.what();
      last_timed_out = e.timed_out();
    } catch (...) {
      release();
      throw;
    }
  }
  if (last_timed_out) throw Timeout(max_attempts);
  throw RetriesExhausted(max_attempts, last_error);
}

}  // namespace qaaug
