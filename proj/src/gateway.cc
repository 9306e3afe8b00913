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

#include "debatecheck/gateway.h"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <thread>

#include "debatecheck/errors.h"

namespace debatecheck {

std::string FormatRouteHeader(const RouteTag& route) {
  std::ostringstream os;
  os << "claim=" << route.claim_id << ";role=" << RoleName(route.role)
     << ";round=" << route.round
     << ";template=" << TemplateName(route.template_id);
  return os.str();
}

std::int64_t EstimateTokens(std::string_view text) {
  std::int64_t words = 0;
  bool in_word = false;
  for (char c : text) {
    bool space = std::isspace(static_cast<unsigned char>(c)) != 0;
    if (!space && !in_word) ++words;
    in_word = !space;
  }
  return std::llround(static_cast<double>(words) * 1.3);
}

std::int64_t EstimateTokens(const std::vector<ChatMessage>& messages) {
  std::int64_t total = 0;
  for (const auto& m : messages) total += EstimateTokens(m.content);
  return total;
}

ChatResponse CompleteChat(const ChatRequest& request, Backend& backend) {
  if (request.messages.empty()) {
    throw ProviderError(0, "chat request has no messages");
  }
  for (std::size_t i = 0; i < request.messages.size(); ++i) {
    const auto& role = request.messages[i].role;
    bool ok = role == "user" || role == "assistant" ||
              (role == "system" && i == 0);
    if (!ok) throw ProviderError(0, "invalid message role at index " +
                                        std::to_string(i) + ": " + role);
  }
  return backend.Complete(request);
}

void ThreadSleep(std::chrono::milliseconds d) {
  std::this_thread::sleep_for(d);
}

std::chrono::milliseconds BackoffDelay(const RetryPolicy& policy,
                                       int retry_index) {
  double ms = static_cast<double>(policy.base_delay.count()) *
              std::pow(policy.multiplier, retry_index);
  return std::chrono::milliseconds(std::llround(ms));
}

ChatResponse WithRetry(const ChatRequest& request, Backend& backend,
                       const RetryPolicy& policy, const Sleeper& sleep,
                       RetryStats* stats) {
  if (policy.max_attempts < 1) {
    throw Error("retry policy needs max_attempts >= 1");
  }
  RetryStats local;
  RetryStats& st = stats ? *stats : local;
  st = {};
  std::string last_cause;
  for (int attempt = 1; attempt <= policy.max_attempts; ++attempt) {
    ++st.attempts;
    try {
      return CompleteChat(request, backend);
    } catch (const BackendError& e) {
      if (!e.retryable()) throw;
      last_cause = e.what();
    }
    if (attempt < policy.max_attempts) {
      auto wait = BackoffDelay(policy, attempt - 1);
      st.waits.push_back(wait);
      sleep(wait);
    }
  }
  throw ExhaustedRetries(st.attempts, last_cause);
}

RateBudget::RateBudget(int requests_per_minute)
    : capacity_(std::max(0, requests_per_minute)),
      tokens_(capacity_),
      last_(Clock::now()) {}

void RateBudget::RefillLocked(Clock::time_point now) {
  if (now <= last_) return;
  double elapsed = std::chrono::duration<double>(now - last_).count();
  tokens_ = std::min(capacity_, tokens_ + elapsed * capacity_ / 60.0);
  last_ = now;
}

bool RateBudget::TryAcquire(Clock::time_point now) {
  if (capacity_ <= 0) return true;
  std::lock_guard<std::mutex> lock(mu_);
  RefillLocked(now);
  if (tokens_ < 1.0) return false;
  tokens_ -= 1.0;
  return true;
}

void RateBudget::Acquire() {
  if (capacity_ <= 0) return;
  while (!TryAcquire(Clock::now())) {
    // One token accrues every 60/capacity seconds.
    auto step = std::chrono::duration<double>(60.0 / capacity_);
    std::this_thread::sleep_for(
        std::min<std::chrono::duration<double>>(step,
                                                std::chrono::milliseconds(50)));
  }
}

void UsageLedger::Record(Role role, const std::string& model,
                         const ChatResponse& r) {
  std::lock_guard<std::mutex> lock(mu_);
  auto& slot = totals_[std::string(RoleName(role))];
  slot.model = model;
  slot.input_tokens += std::max<std::int64_t>(0, r.input_tokens);
  slot.output_tokens += std::max<std::int64_t>(0, r.output_tokens);
  slot.estimated = slot.estimated || r.estimated;
}

TokenUsage UsageLedger::Snapshot() const {
  std::lock_guard<std::mutex> lock(mu_);
  return totals_;
}

Gateway::Gateway(Backend& backend, RetryPolicy policy, RateBudget* budget,
                 UsageLedger* ledger, Sleeper sleep)
    : backend_(backend),
      policy_(policy),
      budget_(budget),
      ledger_(ledger),
      sleep_(std::move(sleep)) {}

ChatResponse Gateway::Complete(const ChatRequest& request, int* attempts) {
  // The budget is charged once per attempt, so wrap the backend.
  struct Throttled : Backend {
    Backend& inner;
    RateBudget* budget;
    Throttled(Backend& b, RateBudget* r) : inner(b), budget(r) {}
    ChatResponse Complete(const ChatRequest& req) override {
      if (budget) budget->Acquire();
      return inner.Complete(req);
    }
  } throttled(backend_, budget_);

  RetryStats stats;
  try {
    ChatResponse r = WithRetry(request, throttled, policy_, sleep_, &stats);
    if (attempts) *attempts = stats.attempts;
    if (ledger_) ledger_->Record(request.route.role, request.model_id, r);
    return r;
  } catch (...) {
    if (attempts) *attempts = stats.attempts;
    throw;
  }
}

}  // namespace debatecheck
