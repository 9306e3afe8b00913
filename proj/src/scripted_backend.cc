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

#include "debatecheck/scripted_backend.h"

#include <array>
#include <chrono>
#include <fstream>
#include <thread>

#include <json.hpp>

#include "debatecheck/errors.h"

namespace debatecheck {
namespace {

constexpr int kAny = -1;

int RoleKey(const std::optional<Role>& r) {
  return r ? static_cast<int>(*r) : kAny;
}
int TemplateKey(const std::optional<TemplateId>& t) {
  return t ? static_cast<int>(*t) : kAny;
}

}  // namespace

ScriptedBackend::ScriptedBackend(std::vector<FixtureRecord> records) {
  for (auto& r : records) Add(std::move(r));
}

void ScriptedBackend::Add(FixtureRecord record) {
  Key key{record.claim_id, RoleKey(record.role),
          record.round > 0 ? record.round : kAny,
          TemplateKey(record.template_id)};
  std::lock_guard<std::mutex> lock(mu_);
  table_[key].push_back(std::move(record));
}

FixtureRecord ScriptedBackend::ParseRecord(const std::string& json_line) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(json_line);
  } catch (const nlohmann::json::exception& e) {
    throw FixtureError(std::string("fixture line is not JSON: ") + e.what());
  }
  if (!j.is_object()) throw FixtureError("fixture line is not an object");
  FixtureRecord r;
  try {
    r.claim_id = j.value("claim_id", "");
    if (j.contains("role")) r.role = ParseRole(j.at("role").get<std::string>());
    r.round = j.value("round", 0);
    if (j.contains("template")) {
      r.template_id = ParseTemplateId(j.at("template").get<std::string>());
    }
    r.response = j.value("response", "");
    r.error = j.value("error", "");
    r.status = j.value("status", 0);
    r.delay_ms = j.value("delay_ms", 0);
    if (j.contains("input_tokens")) {
      r.input_tokens = j.at("input_tokens").get<std::int64_t>();
    }
    if (j.contains("output_tokens")) {
      r.output_tokens = j.at("output_tokens").get<std::int64_t>();
    }
  } catch (const nlohmann::json::exception& e) {
    throw FixtureError(std::string("bad fixture field: ") + e.what());
  } catch (const Error& e) {
    throw FixtureError(e.what());
  }
  if (!r.error.empty() && r.error != "rate_limited" && r.error != "transport" &&
      r.error != "provider") {
    throw FixtureError("unknown fixture error kind: " + r.error);
  }
  return r;
}

std::unique_ptr<ScriptedBackend> ScriptedBackend::FromFile(
    const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw FixtureError("cannot open fixture file: " + path.string());
  auto backend = std::make_unique<ScriptedBackend>();
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    try {
      backend->Add(ParseRecord(line));
    } catch (const FixtureError& e) {
      throw FixtureError(path.string() + ":" + std::to_string(lineno) + ": " +
                         e.what());
    }
  }
  return backend;
}

ChatResponse ScriptedBackend::Complete(const ChatRequest& request) {
  const RouteTag& rt = request.route;
  const int role = static_cast<int>(rt.role);
  const int tmpl = static_cast<int>(rt.template_id);

  // Most specific first.
  const std::array<Key, 16> candidates = {{
      {rt.claim_id, role, rt.round, tmpl}, {rt.claim_id, role, rt.round, kAny},
      {rt.claim_id, role, kAny, tmpl},     {rt.claim_id, role, kAny, kAny},
      {rt.claim_id, kAny, rt.round, tmpl}, {rt.claim_id, kAny, rt.round, kAny},
      {rt.claim_id, kAny, kAny, tmpl},     {rt.claim_id, kAny, kAny, kAny},
      {"", role, rt.round, tmpl},          {"", role, rt.round, kAny},
      {"", role, kAny, tmpl},              {"", role, kAny, kAny},
      {"", kAny, rt.round, tmpl},          {"", kAny, rt.round, kAny},
      {"", kAny, kAny, tmpl},              {"", kAny, kAny, kAny},
  }};

  FixtureRecord rec;
  {
    std::lock_guard<std::mutex> lock(mu_);
    log_.push_back(request);
    const std::vector<FixtureRecord>* seq = nullptr;
    const Key* hit = nullptr;
    for (const Key& k : candidates) {
      auto it = table_.find(k);
      if (it != table_.end() && !it->second.empty()) {
        seq = &it->second;
        hit = &it->first;
        break;
      }
    }
    if (seq == nullptr) {
      throw FixtureError("no fixture for route " + FormatRouteHeader(rt));
    }
    std::size_t& cursor = cursors_[{rt.claim_id, *hit}];
    rec = (*seq)[std::min(cursor, seq->size() - 1)];
    ++cursor;
  }

  if (rec.delay_ms > 0) {
    std::this_thread::sleep_for(std::chrono::milliseconds(rec.delay_ms));
  }
  if (rec.error == "rate_limited") {
    throw RateLimited("scripted rate limit (status " +
                      std::to_string(rec.status ? rec.status : 429) + ")");
  }
  if (rec.error == "transport") throw TransportError("scripted transport error");
  if (rec.error == "provider") {
    throw ProviderError(rec.status ? rec.status : 400, "scripted provider error");
  }

  ChatResponse out;
  out.content = rec.response;
  out.estimated = !(rec.input_tokens && rec.output_tokens);
  out.input_tokens =
      rec.input_tokens ? *rec.input_tokens : EstimateTokens(request.messages);
  out.output_tokens =
      rec.output_tokens ? *rec.output_tokens : EstimateTokens(rec.response);
  return out;
}

int ScriptedBackend::calls() const {
  std::lock_guard<std::mutex> lock(mu_);
  return static_cast<int>(log_.size());
}

std::vector<ChatRequest> ScriptedBackend::requests() const {
  std::lock_guard<std::mutex> lock(mu_);
  return log_;
}

}  // namespace debatecheck
