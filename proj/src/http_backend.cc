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

#include "debatecheck/http_backend.h"

#include <cstdlib>

#include <httplib.h>
#include <json.hpp>

#include "debatecheck/errors.h"

namespace debatecheck {

HttpBackendConfig HttpBackendConfigFromEnv() {
  HttpBackendConfig cfg;
  if (const char* base = std::getenv(kApiBaseEnv); base && *base) {
    cfg.base_url = base;
  }
  if (const char* key = std::getenv(kApiKeyEnv); key && *key) {
    cfg.api_key = key;
  } else if (const char* key2 = std::getenv("OPENAI_API_KEY"); key2 && *key2) {
    cfg.api_key = key2;
  }
  return cfg;
}

std::string BuildChatCompletionBody(const ChatRequest& request) {
  nlohmann::ordered_json body;
  body["model"] = request.model_id;
  auto& msgs = body["messages"] = nlohmann::ordered_json::array();
  for (const auto& m : request.messages) {
    msgs.push_back({{"role", m.role}, {"content", m.content}});
  }
  body["max_tokens"] = request.params.max_new_tokens;
  body["temperature"] = request.params.temperature;
  body["top_p"] = request.params.top_p;
  return body.dump();
}

ChatResponse ParseChatCompletionBody(const std::string& body,
                                     const ChatRequest& request) {
  ChatResponse out;
  try {
    auto j = nlohmann::json::parse(body);
    const auto& msg = j.at("choices").at(0).at("message");
    if (msg.contains("content") && msg.at("content").is_string()) {
      out.content = msg.at("content").get<std::string>();
    }
    if (j.contains("usage") && j.at("usage").is_object() &&
        j.at("usage").contains("prompt_tokens") &&
        j.at("usage").contains("completion_tokens")) {
      out.input_tokens = j.at("usage").at("prompt_tokens").get<std::int64_t>();
      out.output_tokens =
          j.at("usage").at("completion_tokens").get<std::int64_t>();
      return out;
    }
  } catch (const nlohmann::json::exception& e) {
    throw ProviderError(200, std::string("malformed completion body: ") +
                                 e.what());
  }
  out.estimated = true;
  out.input_tokens = EstimateTokens(request.messages);
  out.output_tokens = EstimateTokens(out.content);
  return out;
}

HttpBackend::HttpBackend(HttpBackendConfig config)
    : config_(std::move(config)) {
  const std::string& url = config_.base_url;
  auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) {
    throw UsageError("API base URL needs a scheme: " + url);
  }
  auto path_start = url.find('/', scheme_end + 3);
  origin_ = url.substr(0, path_start);
  path_ = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!path_.empty() && path_.back() == '/') path_.pop_back();
}

ChatResponse HttpBackend::Complete(const ChatRequest& request) {
  httplib::Client client(origin_);
  if (!client.is_valid()) {
    throw TransportError("cannot create HTTP client for " + origin_);
  }
  client.set_connection_timeout(config_.timeout);
  client.set_read_timeout(config_.timeout);
  client.set_write_timeout(config_.timeout);

  httplib::Headers headers = {{kRouteHeader, FormatRouteHeader(request.route)}};
  if (!config_.api_key.empty()) {
    headers.emplace("Authorization", "Bearer " + config_.api_key);
  }
  auto res = client.Post(path_ + "/chat/completions", headers,
                         BuildChatCompletionBody(request), "application/json");
  if (!res) {
    throw TransportError("request to " + origin_ + " failed: " +
                         httplib::to_string(res.error()));
  }
  const int status = res->status;
  if (status == 429) {
    throw RateLimited("provider returned 429");
  }
  if (status == 408 || status >= 500) {
    throw TransportError("provider returned " + std::to_string(status));
  }
  if (status < 200 || status >= 300) {
    throw ProviderError(status, "provider returned " + std::to_string(status) +
                                    ": " + res->body.substr(0, 200));
  }
  return ParseChatCompletionBody(res->body, request);
}

}  // namespace debatecheck
