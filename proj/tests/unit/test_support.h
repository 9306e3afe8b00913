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

// Shared fixtures for the unit and acceptance tests.

#ifndef DEBATECHECK_TESTS_TEST_SUPPORT_H_
#define DEBATECHECK_TESTS_TEST_SUPPORT_H_

#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include <json.hpp>

#include "debatecheck/model.h"
#include "debatecheck/scripted_backend.h"

namespace debatecheck::testing {

// Fresh directory under the system temp dir, removed on destruction.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    std::random_device rd;
    path_ = std::filesystem::temp_directory_path() /
            ("debatecheck-" + tag + "-" + std::to_string(rd()));
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  TempDir(const TempDir&) = delete;
  TempDir& operator=(const TempDir&) = delete;

  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline std::string DecisionJson(bool proceed, const std::string& verdict = "",
                                const std::string& justification = "",
                                const std::string& insight = "insight") {
  nlohmann::ordered_json j;
  j["Primary Insight"] = insight;
  j["Evidence Gaps"] = "gaps";
  j["Justification for Proceeding"] = proceed ? "more needed" : "settled";
  j["Proceeding Necessity"] = proceed ? "Yes" : "No";
  j["Justification for Verdict"] = justification;
  j["Verdict"] = verdict;
  return j.dump();
}

inline std::string FinalJson(const std::string& verdict,
                             const std::string& justification) {
  nlohmann::ordered_json j;
  j["Justification for Verdict"] = justification;
  j["Verdict"] = verdict;
  return j.dump();
}

inline FixtureRecord Reply(std::optional<Role> role, std::string response,
                           int round = 0, std::string claim_id = "",
                           std::optional<TemplateId> tmpl = std::nullopt) {
  FixtureRecord r;
  r.claim_id = std::move(claim_id);
  r.role = role;
  r.round = round;
  r.template_id = tmpl;
  r.response = std::move(response);
  return r;
}

inline Claim MakeClaim(const std::string& id, const std::string& text,
                       std::optional<Verdict> gold = std::nullopt,
                       std::vector<EvidenceItem> evidence = {}) {
  Claim c;
  c.id = id;
  c.text = text;
  c.gold_verdict = gold;
  c.evidence = std::move(evidence);
  return c;
}

// Debaters that always answer and a Moderator that settles in round 1.
inline void AddDebaters(ScriptedBackend& b, const std::string& claim_id = "") {
  b.Add(Reply(Role::kAffirmative, "affirmative argument", 0, claim_id));
  b.Add(Reply(Role::kNegative, "negative argument", 0, claim_id));
}

}  // namespace debatecheck::testing

#endif  // DEBATECHECK_TESTS_TEST_SUPPORT_H_
