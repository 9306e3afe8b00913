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

#include <gtest/gtest.h>

#include <httplib.h>

#include <thread>

#include "debatecheck/errors.h"
#include "debatecheck/gateway.h"
#include "debatecheck/http_backend.h"
#include "debatecheck/scripted_backend.h"
#include "test_support.h"

namespace debatecheck {
namespace {

using namespace std::chrono_literals;
using testing::Reply;

ChatRequest ModeratorRequest(int round = 1, std::string claim = "c1") {
  ChatRequest r;
  r.model_id = "gpt-4o";
  r.messages = {{"system", "meta"}, {"user", "round prompt"}};
  r.route = {std::move(claim), Role::kModerator, round,
             TemplateId::kModeratorRound};
  return r;
}

// Backend that fails a fixed number of times before answering.
class FlakyBackend : public Backend {
 public:
  FlakyBackend(int failures, bool rate_limit)
      : failures_(failures), rate_limit_(rate_limit) {}
  ChatResponse Complete(const ChatRequest&) override {
    ++calls;
    if (calls <= failures_) {
      if (rate_limit_) throw RateLimited("429");
      throw TransportError("reset");
    }
    return {"ok", 1, 1, false};
  }
  int calls = 0;

 private:
  int failures_;
  bool rate_limit_;
};

TEST(ScriptedBackend, PlaysFixtureVerbatim) {
  ScriptedBackend b;
  b.Add(Reply(Role::kModerator, "  {\"x\": 1}\n", 1));
  EXPECT_EQ(CompleteChat(ModeratorRequest(1), b).content, "  {\"x\": 1}\n");
  EXPECT_THROW(CompleteChat(ModeratorRequest(2), b), FixtureError);
}

TEST(ScriptedBackend, MostSpecificRecordWins) {
  ScriptedBackend b;
  b.Add(Reply(Role::kModerator, "any round"));
  b.Add(Reply(Role::kModerator, "round two", 2));
  b.Add(Reply(Role::kModerator, "claim c9", 2, "c9"));
  EXPECT_EQ(b.Complete(ModeratorRequest(1)).content, "any round");
  EXPECT_EQ(b.Complete(ModeratorRequest(2)).content, "round two");
  EXPECT_EQ(b.Complete(ModeratorRequest(2, "c9")).content, "claim c9");
}

TEST(ScriptedBackend, SequencesPerClaimAndRepeatsLast) {
  ScriptedBackend b;
  b.Add(Reply(Role::kModerator, "first"));
  b.Add(Reply(Role::kModerator, "second"));
  EXPECT_EQ(b.Complete(ModeratorRequest(1, "a")).content, "first");
  EXPECT_EQ(b.Complete(ModeratorRequest(1, "b")).content, "first");
  EXPECT_EQ(b.Complete(ModeratorRequest(1, "a")).content, "second");
  EXPECT_EQ(b.Complete(ModeratorRequest(1, "a")).content, "second");
  EXPECT_EQ(b.calls(), 4);
}

TEST(ScriptedBackend, ParsesFixtureLines) {
  auto r = ScriptedBackend::ParseRecord(
      R"({"claim_id":"c1","role":"Moderator","round":2,"template":"ModeratorFinal",)"
      R"("response":"r","input_tokens":10,"output_tokens":3})");
  EXPECT_EQ(r.claim_id, "c1");
  EXPECT_EQ(r.role, Role::kModerator);
  EXPECT_EQ(r.round, 2);
  EXPECT_EQ(r.template_id, TemplateId::kModeratorFinal);
  EXPECT_EQ(r.input_tokens, 10);
  EXPECT_THROW(ScriptedBackend::ParseRecord("{\"error\":\"boom\"}"),
               FixtureError);
  EXPECT_THROW(ScriptedBackend::ParseRecord("not json"), FixtureError);
}

TEST(ScriptedBackend, ReportsTokens) {
  ScriptedBackend b;
  auto rec = Reply(Role::kModerator, "one two three four five");
  b.Add(rec);
  auto est = b.Complete(ModeratorRequest());
  EXPECT_TRUE(est.estimated);
  EXPECT_EQ(est.output_tokens, 7);  // round(5 * 1.3)
  rec.input_tokens = 100;
  rec.output_tokens = 20;
  ScriptedBackend exact({rec});
  auto r = exact.Complete(ModeratorRequest());
  EXPECT_FALSE(r.estimated);
  EXPECT_EQ(r.input_tokens, 100);
  EXPECT_EQ(r.output_tokens, 20);
}

TEST(CompleteChat, ValidatesRoles) {
  ScriptedBackend b;
  b.Add(Reply(std::nullopt, "x"));
  ChatRequest r = ModeratorRequest();
  r.messages = {};
  EXPECT_THROW(CompleteChat(r, b), Error);
  r.messages = {{"user", "u"}, {"system", "late"}};
  EXPECT_THROW(CompleteChat(r, b), Error);
  r.messages = {{"user", "u"}, {"tool", "?"}};
  EXPECT_THROW(CompleteChat(r, b), Error);
}

TEST(EstimateTokens, WordsTimesFactor) {
  EXPECT_EQ(EstimateTokens(""), 0);
  EXPECT_EQ(EstimateTokens("a b c"), 4);  // 3.9
  EXPECT_EQ(EstimateTokens("  a\tb\n"), 3);  // 2.6
}

TEST(WithRetry, RateLimitedTwiceThenSuccess) {
  ScriptedBackend b;
  FixtureRecord limited = Reply(Role::kModerator, "");
  limited.error = "rate_limited";
  b.Add(limited);
  b.Add(limited);
  b.Add(Reply(Role::kModerator, "done"));
  std::vector<std::chrono::milliseconds> waits;
  RetryStats stats;
  auto r = WithRetry(ModeratorRequest(), b, {4, 100ms, 2.0},
                     [&](auto d) { waits.push_back(d); }, &stats);
  EXPECT_EQ(r.content, "done");
  EXPECT_EQ(stats.attempts, 3);
  EXPECT_EQ(stats.waits.size(), 2u);
  EXPECT_EQ(waits, (std::vector<std::chrono::milliseconds>{100ms, 200ms}));
}

TEST(WithRetry, ExhaustsAfterMaxAttempts) {
  FlakyBackend b(1000, false);
  std::vector<std::chrono::milliseconds> waits;
  try {
    WithRetry(ModeratorRequest(), b, {3, 100ms, 2.0},
              [&](auto d) { waits.push_back(d); });
    FAIL();
  } catch (const ExhaustedRetries& e) {
    EXPECT_EQ(e.attempts(), 3);
  }
  EXPECT_EQ(b.calls, 3);
  EXPECT_EQ(waits, (std::vector<std::chrono::milliseconds>{100ms, 200ms}));
}

TEST(WithRetry, FirstAttemptSucceeds) {
  FlakyBackend b(0, true);
  int sleeps = 0;
  WithRetry(ModeratorRequest(), b, {}, [&](auto) { ++sleeps; });
  EXPECT_EQ(b.calls, 1);
  EXPECT_EQ(sleeps, 0);
}

TEST(WithRetry, ProviderErrorsAreNotRetried) {
  ScriptedBackend b;
  FixtureRecord bad = Reply(Role::kModerator, "");
  bad.error = "provider";
  bad.status = 400;
  b.Add(bad);
  EXPECT_THROW(WithRetry(ModeratorRequest(), b, {}, [](auto) {}), ProviderError);
  EXPECT_EQ(b.calls(), 1);
}

TEST(BackoffDelay, Geometric) {
  RetryPolicy p{5, 100ms, 2.0};
  EXPECT_EQ(BackoffDelay(p, 0), 100ms);
  EXPECT_EQ(BackoffDelay(p, 1), 200ms);
  EXPECT_EQ(BackoffDelay(p, 3), 800ms);
}

TEST(RateBudget, RefillsOverTime) {
  RateBudget budget(60);  // one per second
  auto t0 = RateBudget::Clock::now();
  int granted = 0;
  while (budget.TryAcquire(t0)) ++granted;
  EXPECT_EQ(granted, 60);
  EXPECT_FALSE(budget.TryAcquire(t0 + 500ms));
  EXPECT_TRUE(budget.TryAcquire(t0 + 1100ms));
  RateBudget off(0);
  for (int i = 0; i < 1000; ++i) EXPECT_TRUE(off.TryAcquire(t0));
}

TEST(Gateway, CountsAttemptsAndRecordsUsage) {
  FlakyBackend b(2, true);
  UsageLedger ledger;
  Gateway g(b, {4, 1ms, 1.0}, nullptr, &ledger, [](auto) {});
  int attempts = 0;
  g.Complete(ModeratorRequest(), &attempts);
  EXPECT_EQ(attempts, 3);
  auto usage = ledger.Snapshot();
  ASSERT_TRUE(usage.count("Moderator"));
  EXPECT_EQ(usage.at("Moderator").model, "gpt-4o");
  EXPECT_EQ(usage.at("Moderator").output_tokens, 1);
}

TEST(HttpBody, CarriesDefaultParams) {
  auto body = nlohmann::json::parse(BuildChatCompletionBody(ModeratorRequest()));
  EXPECT_EQ(body.at("model"), "gpt-4o");
  EXPECT_EQ(body.at("max_tokens"), 512);
  EXPECT_DOUBLE_EQ(body.at("temperature").get<double>(), 0.7);
  EXPECT_DOUBLE_EQ(body.at("top_p").get<double>(), 1.0);
  ASSERT_EQ(body.at("messages").size(), 2u);
  EXPECT_EQ(body.at("messages")[0].at("role"), "system");
}

TEST(HttpBody, ParsesUsageOrEstimates) {
  auto req = ModeratorRequest();
  auto r = ParseChatCompletionBody(
      R"({"choices":[{"message":{"role":"assistant","content":"hi"}}],)"
      R"("usage":{"prompt_tokens":42,"completion_tokens":7}})",
      req);
  EXPECT_EQ(r.content, "hi");
  EXPECT_EQ(r.input_tokens, 42);
  EXPECT_FALSE(r.estimated);
  auto e = ParseChatCompletionBody(
      R"({"choices":[{"message":{"content":"a b"}}]})", req);
  EXPECT_TRUE(e.estimated);
  EXPECT_EQ(e.output_tokens, 3);
  EXPECT_THROW(ParseChatCompletionBody("{}", req), Error);
}

// Local chat-completions stub: answers by status code chosen per request.
class HttpBackendTest : public ::testing::Test {
 protected:
  void SetUp() override {
    server_.Post("/v1/chat/completions",
                 [this](const httplib::Request& req, httplib::Response& res) {
                   last_body_ = req.body;
                   last_route_ = req.get_header_value(kRouteHeader);
                   last_auth_ = req.get_header_value("Authorization");
                   res.status = status_;
                   res.set_content(
                       R"({"choices":[{"message":{"content":"pong"}}],)"
                       R"("usage":{"prompt_tokens":5,"completion_tokens":1}})",
                       "application/json");
                 });
    port_ = server_.bind_to_any_port("127.0.0.1");
    thread_ = std::thread([this] { server_.listen_after_bind(); });
    server_.wait_until_ready();
  }
  void TearDown() override {
    server_.stop();
    thread_.join();
  }
  HttpBackend Backend() {
    HttpBackendConfig c;
    c.base_url = "http://127.0.0.1:" + std::to_string(port_) + "/v1";
    c.api_key = "k";
    c.timeout = 5s;
    return HttpBackend(c);
  }

  httplib::Server server_;
  std::thread thread_;
  int port_ = 0;
  int status_ = 200;
  std::string last_body_, last_route_, last_auth_;
};

TEST_F(HttpBackendTest, PostsAndParses) {
  auto b = Backend();
  auto r = b.Complete(ModeratorRequest(2));
  EXPECT_EQ(r.content, "pong");
  EXPECT_EQ(r.input_tokens, 5);
  EXPECT_EQ(last_route_, "claim=c1;role=Moderator;round=2;template=ModeratorRound");
  EXPECT_EQ(last_auth_, "Bearer k");
  EXPECT_EQ(nlohmann::json::parse(last_body_).at("max_tokens"), 512);
}

TEST_F(HttpBackendTest, MapsStatusCodes) {
  auto b = Backend();
  status_ = 429;
  EXPECT_THROW(b.Complete(ModeratorRequest()), RateLimited);
  status_ = 503;
  EXPECT_THROW(b.Complete(ModeratorRequest()), TransportError);
  status_ = 401;
  try {
    b.Complete(ModeratorRequest());
    FAIL();
  } catch (const ProviderError& e) {
    EXPECT_EQ(e.status(), 401);
  }
}

TEST(HttpBackend, UnreachableIsTransportError) {
  HttpBackendConfig c;
  c.base_url = "http://127.0.0.1:1/v1";
  c.timeout = 2s;
  HttpBackend b(c);
  EXPECT_THROW(b.Complete(ModeratorRequest()), TransportError);
}

}  // namespace
}  // namespace debatecheck
