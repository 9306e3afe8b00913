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

#ifndef DEBATECHECK_HTTP_BACKEND_H_
#define DEBATECHECK_HTTP_BACKEND_H_

#include <chrono>
#include <string>

#include "debatecheck/gateway.h"

namespace debatecheck {

inline constexpr char kRouteHeader[] = "X-Debatecheck-Route";
inline constexpr char kApiBaseEnv[] = "DEBATECHECK_API_BASE";
inline constexpr char kApiKeyEnv[] = "DEBATECHECK_API_KEY";

struct HttpBackendConfig {
  // e.g. "https://api.openai.com/v1" or "http://127.0.0.1:8000/v1"
  std::string base_url = "https://api.openai.com/v1";
  std::string api_key;
  std::chrono::seconds timeout{120};
};

// Reads DEBATECHECK_API_BASE and DEBATECHECK_API_KEY (falling back to
// OPENAI_API_KEY).
HttpBackendConfig HttpBackendConfigFromEnv();

// Serializes a request into the common chat-completions body:
// {model, messages, max_tokens, temperature, top_p}.
std::string BuildChatCompletionBody(const ChatRequest& request);

// Parses a chat-completions response body. Uses usage.prompt_tokens and
// usage.completion_tokens when present, else falls back to EstimateTokens.
ChatResponse ParseChatCompletionBody(const std::string& body,
                                     const ChatRequest& request);

// POSTs to <base_url>/chat/completions. Status 429 maps to RateLimited,
// 408/5xx and connection failures to TransportError, any other non-2xx to
// ProviderError.
class HttpBackend : public Backend {
 public:
  explicit HttpBackend(HttpBackendConfig config);
  ChatResponse Complete(const ChatRequest& request) override;

 private:
  HttpBackendConfig config_;
  std::string origin_;  // scheme://host[:port]
  std::string path_;    // path prefix, no trailing slash
};

}  // namespace debatecheck

#endif  // DEBATECHECK_HTTP_BACKEND_H_
