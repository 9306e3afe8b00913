// Copyright 2026 The debatecheck Authors
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

// Chat-completion gateway: request/response types, the backend interface,
// retry with exponential backoff, a process-wide request-rate budget and token
// accounting.

#ifndef DEBATECHECK_GATEWAY_H_
#define DEBATECHECK_GATEWAY_H_

#include <chrono>
#include <condition_variable>
#include <cstdint>
#include <functional>
#include <mutex>
#include <string>
#include <string_view>
#include <vector>

#include "debatecheck/model.h"

namespace debatecheck {

struct GenerationParams {
  int max_new_tokens = 512;
  double temperature = 0.7;
  double top_p = 1.0;

  friend bool operator==(const GenerationParams&,
                         const GenerationParams&) = default;
};

// Identifies which protocol slot a request belongs to. Sent to networked
// backends as a header and used by the scripted backend as its fixture key.
struct RouteTag {
  std::string claim_id;
  Role role = Role::kModerator;
  int round = 0;
  TemplateId template_id = TemplateId::kModeratorRound;
};

std::string FormatRouteHeader(const RouteTag& route);

struct ChatRequest {
  std::string model_id;
  std::vector<ChatMessage> messages;
  GenerationParams params;
  RouteTag route;
};

struct ChatResponse {
  std::string content;
  std::int64_t input_tokens = 0;
  std::int64_t output_tokens = 0;
  // True when the counts come from EstimateTokens rather than the provider.
  bool estimated = false;
};

// Whitespace-token count scaled by 1.3, rounded to nearest.
std::int64_t EstimateTokens(std::string_view text);
std::int64_t EstimateTokens(const std::vector<ChatMessage>& messages);

class Backend {
 public:
  virtual ~Backend() = default;
  // Throws TransportError, RateLimited or ProviderError.
  virtual ChatResponse Complete(const ChatRequest& request) = 0;
};

// Validates the request shape and forwards one call to `backend`.
ChatResponse CompleteChat(const ChatRequest& request, Backend& backend);

struct RetryPolicy {
  int max_attempts = 4;
  std::chrono::milliseconds base_delay{1000};
  double multiplier = 2.0;
};

using Sleeper = std::function<void(std::chrono::milliseconds)>;
void ThreadSleep(std::chrono::milliseconds d);

struct RetryStats {
  int attempts = 0;
  std::vector<std::chrono::milliseconds> waits;
};

// Delay before attempt `retry_index + 2`: base_delay * multiplier^retry_index.
std::chrono::milliseconds BackoffDelay(const RetryPolicy& policy,
                                       int retry_index);

// Retries RateLimited and TransportError up to policy.max_attempts total
// attempts; other errors propagate immediately. Throws ExhaustedRetries once
// attempts run out.
ChatResponse WithRetry(const ChatRequest& request, Backend& backend,
                       const RetryPolicy& policy,
                       const Sleeper& sleep = ThreadSleep,
                       RetryStats* stats = nullptr);

// Token bucket over requests per minute, shared by every worker in a process.
class RateBudget {
 public:
  using Clock = std::chrono::steady_clock;

  // requests_per_minute <= 0 disables throttling.
  explicit RateBudget(int requests_per_minute);

  // Blocks until a request slot is free.
  void Acquire();
  // Non-blocking form against an explicit time point; returns false when the
  // bucket is empty.
  bool TryAcquire(Clock::time_point now);

 private:
  void RefillLocked(Clock::time_point now);

  double capacity_;
  double tokens_;
  Clock::time_point last_;
  std::mutex mu_;
};

// Running per-role token totals for a whole run. Totals never decrease.
class UsageLedger {
 public:
  void Record(Role role, const std::string& model, const ChatResponse& r);
  TokenUsage Snapshot() const;

 private:
  mutable std::mutex mu_;
  TokenUsage totals_;
};

// What the engine talks to: a backend plus retry policy, optional rate budget
// and ledger. Shareable across threads when the backend is.
class Gateway {
 public:
  explicit Gateway(Backend& backend, RetryPolicy policy = {},
                   RateBudget* budget = nullptr, UsageLedger* ledger = nullptr,
                   Sleeper sleep = ThreadSleep);

  // Returns the response; `attempts` receives the number of backend calls.
  ChatResponse Complete(const ChatRequest& request, int* attempts = nullptr);

 private:
  Backend& backend_;
  RetryPolicy policy_;
  RateBudget* budget_;
  UsageLedger* ledger_;
  Sleeper sleep_;
};

}  // namespace debatecheck

#endif  // DEBATECHECK_GATEWAY_H_
