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

#ifndef DEBATECHECK_SCRIPTED_BACKEND_H_
#define DEBATECHECK_SCRIPTED_BACKEND_H_

#include <filesystem>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <tuple>
#include <vector>

#include "debatecheck/gateway.h"

namespace debatecheck {

// One scripted reply. `error` injects a failure instead of a reply:
// "rate_limited", "transport" or "provider".
struct FixtureRecord {
  std::string claim_id;  // empty matches any claim
  std::optional<Role> role;
  int round = 0;  // 0 matches any round
  std::optional<TemplateId> template_id;
  std::string response;
  std::string error;
  int status = 0;
  int delay_ms = 0;
  std::optional<std::int64_t> input_tokens;
  std::optional<std::int64_t> output_tokens;
};

// Plays back fixture records keyed by the request's RouteTag. Records that
// share a key are returned in file order, one per call; the last one repeats
// once the sequence is exhausted. Cursors are tracked per request claim id, so
// concurrent debates over different claims do not disturb each other.
//
// Lookup prefers the most specific record set: claim id beats wildcard claim,
// then exact round, then exact template, then exact role.
class ScriptedBackend : public Backend {
 public:
  ScriptedBackend() = default;
  explicit ScriptedBackend(std::vector<FixtureRecord> records);

  // One JSON object per line; blank lines and lines starting with '#' are
  // skipped. Throws FixtureError.
  static std::unique_ptr<ScriptedBackend> FromFile(
      const std::filesystem::path& path);
  static FixtureRecord ParseRecord(const std::string& json_line);

  void Add(FixtureRecord record);

  ChatResponse Complete(const ChatRequest& request) override;

  int calls() const;
  std::vector<ChatRequest> requests() const;

 private:
  using Key = std::tuple<std::string, int, int, int>;  // claim, role, round, tmpl

  mutable std::mutex mu_;
  std::map<Key, std::vector<FixtureRecord>> table_;
  std::map<std::pair<std::string, Key>, std::size_t> cursors_;
  std::vector<ChatRequest> log_;
};

}  // namespace debatecheck

#endif  // DEBATECHECK_SCRIPTED_BACKEND_H_
