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

// debatecheck: multi-agent debate claim verification.
//
//   debatecheck verify     --corpus dev.json --condition golden --run-id r1
//   debatecheck synthesize --corpus train.json --run-id syn1
//   debatecheck export     --run-id syn1
//   debatecheck evaluate   --run-id r1
//
// Exit codes: 0 success, 1 runtime failure, 2 usage error, 130 interrupted.

#include <atomic>
#include <csignal>
#include <iostream>
#include <memory>
#include <string>

#include "CLI11.hpp"
#include "debatecheck/commands.h"
#include "debatecheck/errors.h"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInterrupted = 130;

std::atomic<bool> g_stop{false};

extern "C" void OnSigint(int) {
  if (g_stop.exchange(true)) {
    std::signal(SIGINT, SIG_DFL);
    std::raise(SIGINT);
  }
}

struct Flags {
  std::string corpus;
  std::string condition = "golden";
  std::string retrieved_file;
  std::string run_id;
  std::string runs_root = "runs";
  int max_rounds = 3;
  std::string debater_model = "gpt-4o-mini";
  std::string moderator_model = "gpt-4o";
  std::string backend = "http";
  std::string fixtures;
  std::string pricing;
  int workers = 1;
  int rpm = 0;
  int max_attempts = 4;
  double threshold = debatecheck::kDefaultEvidenceThreshold;
};

void AddRunFlags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--corpus", f.corpus, "AVeriTeC-layout claims file");
  cmd->add_option("--condition", f.condition, "evidence condition")
      ->check(CLI::IsMember({"golden", "retrieved", "no-evidence"}));
  cmd->add_option("--retrieved-file", f.retrieved_file,
                  "retrieved evidence (JSON lines)");
  cmd->add_option("--run-id", f.run_id, "run id (new or to resume)");
  cmd->add_option("--runs-root", f.runs_root, "directory holding runs");
  cmd->add_option("--max-rounds", f.max_rounds, "debate round cap")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--debater-model", f.debater_model);
  cmd->add_option("--moderator-model", f.moderator_model);
  cmd->add_option("--backend", f.backend)
      ->check(CLI::IsMember({"http", "scripted"}));
  cmd->add_option("--fixtures", f.fixtures, "scripted backend fixtures");
  cmd->add_option("--pricing", f.pricing, "pricing table JSON");
  cmd->add_option("--workers", f.workers, "concurrent debates")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--requests-per-minute", f.rpm,
                  "client-side request budget (0 = off)");
  cmd->add_option("--max-attempts", f.max_attempts,
                  "backend attempts per call")
      ->check(CLI::PositiveNumber);
}

debatecheck::RunOptions ToRunOptions(const Flags& f) {
  debatecheck::RunOptions o;
  o.corpus = f.corpus;
  o.condition = debatecheck::ParseCondition(f.condition);
  if (!f.retrieved_file.empty()) o.retrieved_file = f.retrieved_file;
  o.runs_root = f.runs_root;
  o.run_id = f.run_id;
  o.debate.max_rounds = f.max_rounds;
  o.debate.debater_model = f.debater_model;
  o.debate.moderator_model = f.moderator_model;
  o.backend = f.backend;
  if (!f.fixtures.empty()) o.fixtures = f.fixtures;
  if (!f.pricing.empty()) o.pricing = f.pricing;
  o.workers = f.workers;
  o.requests_per_minute = f.rpm;
  o.retry.max_attempts = f.max_attempts;
  return o;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Claim verification by multi-agent debate"};
  app.set_config("--config", "", "TOML/INI file setting the same keys as the flags");
  app.require_subcommand(1);
  Flags f;

  auto* verify = app.add_subcommand("verify", "debate every claim in a corpus");
  AddRunFlags(verify, f);
  auto* synth = app.add_subcommand(
      "synthesize", "debate, correct and export training data (golden only)");
  AddRunFlags(synth, f);
  auto* exp = app.add_subcommand("export", "rewrite sft.jsonl and dpo.jsonl");
  exp->add_option("--run-id", f.run_id)->required();
  exp->add_option("--runs-root", f.runs_root);
  auto* eval = app.add_subcommand("evaluate", "score a run");
  eval->add_option("--run-id", f.run_id)->required();
  eval->add_option("--runs-root", f.runs_root);
  eval->add_option("--corpus", f.corpus, "defaults to the run manifest");
  auto* eval_cond = eval->add_option("--condition", f.condition)
      ->check(CLI::IsMember({"golden", "retrieved", "no-evidence"}));
  eval->add_option("--retrieved-file", f.retrieved_file);
  eval->add_option("--pricing", f.pricing);
  eval->add_option("--threshold", f.threshold, "evidence METEOR threshold");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  std::signal(SIGINT, OnSigint);
  try {
    if (verify->parsed() || synth->parsed()) {
      auto options = ToRunOptions(f);
      if (options.corpus.empty()) {
        throw debatecheck::UsageError("--corpus is required");
      }
      auto backend = debatecheck::MakeBackend(options);
      bool interrupted;
      if (verify->parsed()) {
        auto s = debatecheck::CmdVerify(options, *backend, std::cerr, &g_stop);
        std::cout << s.run_id << "\n";
        interrupted = s.interrupted;
      } else {
        auto s = debatecheck::CmdSynthesize(options, *backend, std::cerr, &g_stop);
        std::cout << s.run_id << "\n";
        interrupted = s.interrupted;
      }
      return interrupted ? kExitInterrupted : kExitOk;
    }
    if (exp->parsed()) {
      debatecheck::CmdExport(f.runs_root, f.run_id, std::cerr);
      return kExitOk;
    }
    debatecheck::EvaluateOptions e;
    e.runs_root = f.runs_root;
    e.run_id = f.run_id;
    if (!f.corpus.empty()) e.corpus = f.corpus;
    if (eval_cond->count() > 0) e.condition = debatecheck::ParseCondition(f.condition);
    if (!f.retrieved_file.empty()) e.retrieved_file = f.retrieved_file;
    if (!f.pricing.empty()) e.pricing = f.pricing;
    e.threshold = f.threshold;
    debatecheck::CmdEvaluate(e, std::cerr);
    return kExitOk;
  } catch (const debatecheck::UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}
