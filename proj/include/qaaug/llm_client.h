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

#ifndef QAAUG_LLM_CLIENT_H_
#define QAAUG_LLM_CLIENT_H_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <memory>
#include <mutex>
#include <random>
#include <stdexcept>
#include <string>
#include <string_view>

#include "qaaug/prompt.h"

namespace qaaug {

class LlmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Non-retryable failure (authentication, bad request, malformed reply).
class ProviderError : public LlmError {
 public:
  using LlmError::LlmError;
};

/// Raised by providers for failures worth retrying (429, 5xx, dropped
/// connections, timeouts). LlmClient never lets one escape.
class TransientError : public LlmError {
 public:
  explicit TransientError(std::string const& message, bool timed_out = false)
      : LlmError(message), timed_out_(timed_out) {}
  bool timed_out() const { return timed_out_; }

 private:
  bool timed_out_;
};

class RetriesExhausted : public LlmError {
 public:
  RetriesExhausted(int attempts, std::string const& last_error);
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

/// Every attempt failed and the last one timed out.
class Timeout : public LlmError {
 public:
  explicit Timeout(int attempts);
  int attempts() const { return attempts_; }

 private:
  int attempts_;
};

/// A scripted mock received a request no rule covers.
class UnmatchedRequest : public LlmError {
 public:
  using LlmError::LlmError;
};

struct LlmConfig {
  std::string model_name = "gpt-4";
  /// Sampling temperature for context and QA generation.
  double temperature = 0.7;
  /// Round-trip re-answers are a consistency check and default to greedy.
  double reanswer_temperature = 0.0;
  int max_output_tokens = 1024;
  std::chrono::milliseconds request_timeout{60'000};
  int max_retries = 3;
  int max_concurrent_requests = 4;

  /// Throws std::invalid_argument on out-of-range values.
  void validate() const;
};

/// One wire-level attempt.
struct ChatRequest {
  PromptKind kind = PromptKind::kContextGen;
  std::string system;
  std::string user;
  std::string model;
  double temperature = 0.0;
  int max_tokens = 0;
  std::chrono::milliseconds timeout{0};
  /// Caller-assigned identity of the logical request (stable across runs).
  std::string request_key;
  /// 1-based attempt number within the retry loop.
  int attempt = 1;
};

struct ChatResponse {
  std::string text;
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
};

/// A chat-completion backend. Implementations must be safe to call from
/// several threads at once.
class ChatProvider {
 public:
  virtual ~ChatProvider() = default;
  virtual ChatResponse send(ChatRequest const& request) = 0;
};

struct LlmExchange {
  PromptSpec prompt;
  std::string request_key;
  std::string response_text;
  std::int64_t prompt_tokens = 0;
  std::int64_t completion_tokens = 0;
  std::chrono::milliseconds latency{0};
  int attempt_count = 1;
};

/// ceil(scalar values / 4), the token estimate used by the mock provider.
std::int64_t estimate_tokens(std::string_view text);

/// Exponential backoff with full jitter: before retry n (1-based) the
/// client sleeps a uniform draw from [0, min(cap, base * 2^(n-1))].
struct BackoffPolicy {
  std::chrono::milliseconds base{1'000};
  std::chrono::milliseconds cap{30'000};

  std::chrono::milliseconds upper_bound(int retry) const;
};

class LlmClient {
 public:
  using Sleeper = std::function<void(std::chrono::milliseconds)>;

  /// An empty sleeper means std::this_thread::sleep_for.
  LlmClient(std::shared_ptr<ChatProvider> provider, LlmConfig config,
            BackoffPolicy backoff = {}, Sleeper sleeper = {});

  LlmClient(LlmClient const&) = delete;
  LlmClient& operator=(LlmClient const&) = delete;

  /// Sends `prompt`, retrying transient failures up to max_retries times.
  /// At most max_concurrent_requests attempts are in flight at once across
  /// all callers; backoff sleeps do not hold a slot.
  LlmExchange complete(PromptSpec const& prompt,
                       std::string_view request_key = {});

  LlmConfig const& config() const { return config_; }

  /// Highest number of simultaneous in-flight attempts observed.
  int peak_in_flight() const;

 private:
  void acquire();
  void release();
  std::chrono::milliseconds jittered_delay(int retry);

  std::shared_ptr<ChatProvider> provider_;
  LlmConfig config_;
  BackoffPolicy backoff_;
  Sleeper sleeper_;

  mutable std::mutex gate_mu_;
  std::condition_variable gate_cv_;
  int in_flight_ = 0;
  int peak_in_flight_ = 0;

  std::mutex rng_mu_;
  std::mt19937_64 jitter_rng_;
};

}  // namespace qaaug

#endif  // QAAUG_LLM_CLIENT_H_
