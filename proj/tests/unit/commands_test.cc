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
#include <sys/wait.h>

#include <cstdlib>
#include <fstream>
#include <sstream>

#include "debatecheck/commands.h"
#include "debatecheck/errors.h"
#include "debatecheck/scripted_backend.h"
#include "test_support.h"

namespace debatecheck {
namespace {

using testing::TempDir;

std::filesystem::path DataDir() { return DEBATECHECK_TEST_DATA; }

RunOptions ThreeClaimOptions(const TempDir& dir, const std::string& run_id) {
  RunOptions o;
  o.corpus = DataDir() / "corpus3.json";
  o.runs_root = dir.path();
  o.run_id = run_id;
  o.backend = "scripted";
  o.fixtures = DataDir() / "fixtures3_syn.jsonl";
  return o;
}

TEST(CmdVerify, PersistsAndResumes) {
  TempDir dir("cmd");
  auto o = ThreeClaimOptions(dir, "r");
  auto backend = MakeBackend(o);
  std::ostringstream log;
  auto s = CmdVerify(o, *backend, log);
  EXPECT_EQ(s.claims, 3);
  EXPECT_EQ(s.executed, 3);
  EXPECT_EQ(s.failed, 0);
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "r" / "manifest.json"));

  auto again = MakeBackend(o);
  s = CmdVerify(o, *again, log);
  EXPECT_EQ(s.already_persisted, 3);
  EXPECT_EQ(s.executed, 0);
  EXPECT_EQ(dynamic_cast<ScriptedBackend&>(*again).calls(), 0);

  std::filesystem::remove(dir.path() / "r" / "outcomes" / "c2.json");
  auto third = MakeBackend(o);
  s = CmdVerify(o, *third, log);
  EXPECT_EQ(s.executed, 1);
  for (const auto& r : dynamic_cast<ScriptedBackend&>(*third).requests()) {
    EXPECT_EQ(r.route.claim_id, "c2");
  }
}

TEST(CmdVerify, RefusesConditionChangeOnResume) {
  TempDir dir("cmd");
  auto o = ThreeClaimOptions(dir, "r");
  auto b = MakeBackend(o);
  std::ostringstream log;
  CmdVerify(o, *b, log);
  o.condition = EvidenceCondition::kNoEvidence;
  EXPECT_THROW(CmdVerify(o, *b, log), UsageError);
}

TEST(CmdVerify, RecordsPerClaimFailures) {
  TempDir dir("cmd");
  auto o = ThreeClaimOptions(dir, "r");
  ScriptedBackend b;
  testing::AddDebaters(b);
  b.Add(testing::Reply(Role::kModerator, testing::DecisionJson(false, "Refuted", "x"),
                       0, "c1"));
  std::ostringstream log;
  auto s = CmdVerify(o, b, log);
  EXPECT_EQ(s.executed, 1);
  EXPECT_EQ(s.failed, 2);
  std::ifstream in(dir.path() / "r" / "failures.jsonl");
  std::string line;
  std::vector<std::string> ids;
  while (std::getline(in, line)) {
    ids.push_back(nlohmann::json::parse(line).at("claim_id"));
  }
  EXPECT_EQ(ids, (std::vector<std::string>{"c2", "c3"}));
}

TEST(CmdEvaluate, MatchesHandCount) {
  TempDir dir("cmd");
  auto o = ThreeClaimOptions(dir, "r");
  auto b = MakeBackend(o);
  std::ostringstream log;
  CmdVerify(o, *b, log);
  EvaluateOptions e;
  e.runs_root = dir.path();
  e.run_id = "r";
  auto report = CmdEvaluate(e, log);
  // c1 Refuted (right), c2 Supported (right), c3 Supported vs NEE (wrong).
  EXPECT_EQ(report.items, 3);
  EXPECT_DOUBLE_EQ(report.accuracy, 2.0 / 3.0);
  EXPECT_DOUBLE_EQ(report.averitec_score, 2.0 / 3.0);
  EXPECT_EQ(report.fpr_nee, 0.0);
  EXPECT_EQ(report.fpr_cec, 0.0);
  EXPECT_EQ(report.round_histogram.at(1), (RoundCounts{2, 0}));
  EXPECT_EQ(report.round_histogram.at(2), (RoundCounts{0, 1}));
  auto json = nlohmann::json::parse(std::ifstream(dir.path() / "r" / "report.json"));
  EXPECT_DOUBLE_EQ(json.at("accuracy").get<double>(), 2.0 / 3.0);
  EXPECT_TRUE(std::filesystem::exists(dir.path() / "r" / "report.txt"));
  // c1's Moderator reports exact tokens: 500 in, 80 out at gpt-4o rates.
  const auto& mod = report.cost.total.lines;
  auto it = std::find_if(mod.begin(), mod.end(),
                         [](const CostLine& l) { return l.role == "Moderator"; });
  ASSERT_NE(it, mod.end());
  EXPECT_TRUE(it->estimated);
}

TEST(CmdEvaluate, NoEvidenceRunScoresZero) {
  TempDir dir("cmd");
  auto o = ThreeClaimOptions(dir, "ne");
  o.condition = EvidenceCondition::kNoEvidence;
  auto b = MakeBackend(o);
  std::ostringstream log;
  CmdVerify(o, *b, log);
  EvaluateOptions e;
  e.runs_root = dir.path();
  e.run_id = "ne";
  auto report = CmdEvaluate(e, log);
  EXPECT_EQ(report.averitec_score, 0.0);
  EXPECT_GT(report.accuracy, 0.0);
  EXPECT_EQ(report.condition, "no-evidence");
}

TEST(CmdEvaluate, UnknownOrEmptyRun) {
  TempDir dir("cmd");
  std::ostringstream log;
  EvaluateOptions e;
  e.runs_root = dir.path();
  e.run_id = "nope";
  EXPECT_THROW(CmdEvaluate(e, log), MissingOutcomes);
  RunStore empty(dir.path(), "empty");
  e.run_id = "empty";
  EXPECT_THROW(CmdEvaluate(e, log), MissingOutcomes);
}

TEST(CmdSynthesize, ExportsAndGuards) {
  TempDir dir("cmd");
  auto o = ThreeClaimOptions(dir, "s");
  auto b = MakeBackend(o);
  std::ostringstream log;
  auto s = CmdSynthesize(o, *b, log);
  EXPECT_EQ(s.exported.samples, 3);
  EXPECT_EQ(s.exported.sft, 2);
  EXPECT_EQ(s.exported.dpo, 1);
  for (const char* f : {"syndec.jsonl", "sft.jsonl", "dpo.jsonl"}) {
    EXPECT_TRUE(std::filesystem::exists(dir.path() / "s" / f)) << f;
  }

  o.run_id = "ret";
  o.condition = EvidenceCondition::kRetrieved;
  try {
    CmdSynthesize(o, *b, log);
    FAIL();
  } catch (const UsageError& e) {
    EXPECT_NE(std::string(e.what()).find("golden"), std::string::npos);
  }
  EXPECT_FALSE(RunStore::Exists(dir.path(), "ret"));
}

TEST(CmdExport, EmptyRunWarns) {
  TempDir dir("cmd");
  RunStore store(dir.path(), "empty");
  std::ostringstream log;
  auto s = CmdExport(dir.path(), "empty", log);
  EXPECT_EQ(s.samples, 0);
  EXPECT_NE(log.str().find("warning"), std::string::npos);
  std::ifstream sft(dir.path() / "empty" / "sft.jsonl");
  EXPECT_EQ(sft.peek(), std::char_traits<char>::eof());
  EXPECT_THROW(CmdExport(dir.path(), "missing", log), MissingOutcomes);
}

int RunCli(const std::string& args) {
  int status = std::system((std::string(DEBATECHECK_CLI) + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

TEST(Cli, ExitCodes) {
  TempDir dir("cli");
  const std::string root = "--runs-root " + dir.path().string();
  const std::string data = DataDir().string();
  EXPECT_EQ(RunCli("verify " + root + " --run-id r --corpus " + data +
                   "/corpus3.json --backend scripted --fixtures " + data +
                   "/fixtures3.jsonl"),
            0);
  int outcomes = 0;
  for (const auto& f : std::filesystem::directory_iterator(dir.path() / "r" / "outcomes")) {
    outcomes += f.path().extension() == ".json";
  }
  EXPECT_EQ(outcomes, 3);
  EXPECT_EQ(RunCli("verify " + root + " --corpus /nonexistent.json --backend scripted"), 2);
  EXPECT_EQ(RunCli("verify " + root), 2);
  EXPECT_EQ(RunCli("verify --bogus-flag"), 2);
  EXPECT_EQ(RunCli("evaluate " + root + " --run-id missing"), 1);
  EXPECT_EQ(RunCli("evaluate " + root + " --run-id r"), 0);
  EXPECT_EQ(RunCli("synthesize " + root + " --run-id x --condition retrieved "
                   "--retrieved-file x --corpus " + data + "/corpus3.json"),
            2);
}

}  // namespace
}  // namespace debatecheck
