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

// Operator commands: verify, synthesize, export and evaluate. The CLI and the
// Python module are thin layers over these.

#ifndef DEBATECHECK_COMMANDS_H_
#define DEBATECHECK_COMMANDS_H_

#include <atomic>
#include <filesystem>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "debatecheck/corpus.h"
#include "debatecheck/cost.h"
#include "debatecheck/debate.h"
#include "debatecheck/gateway.h"
#include "debatecheck/metrics.h"

namespace debatecheck {

struct RunOptions {
  std::filesystem::path corpus;
  EvidenceCondition condition = EvidenceCondition::kGolden;
  std::optional<std::filesystem::path> retrieved_file;
  std::filesystem::path runs_root = "runs";
  std::string run_id;
  DebateConfig debate;
  std::string backend = "http";  // "http" or "scripted"
  std::optional<std::filesystem::path> fixtures;
  std::optional<std::filesystem::path> pricing;
  int workers = 1;
  RetryPolicy retry;
  int requests_per_minute = 0;
};

// Builds the backend named by options.backend. Throws UsageError.
std::unique_ptr<Backend> MakeBackend(const RunOptions& options);

struct VerifySummary {
  std::string run_id;
  int claims = 0;
  int already_persisted = 0;
  int executed = 0;
  int failed = 0;
  bool interrupted = false;
};

// Debates every claim not yet persisted in the run and stores each outcome as
// soon as it completes. Per-claim failures go to failures.jsonl.
VerifySummary CmdVerify(const RunOptions& options, Backend& backend,
                        std::ostream& progress,
                        const std::atomic<bool>* stop = nullptr);

struct ExportSummary {
  int samples = 0;
  int sft = 0;
  int dpo = 0;
  int skipped = 0;
  int corrupt = 0;
};

struct SynthesizeSummary {
  std::string run_id;
  int claims = 0;
  int debates_run = 0;
  int corrections_run = 0;
  int failed = 0;
  bool interrupted = false;
  ExportSummary exported;
};

// Golden-condition runs only (UsageError otherwise). Synthesizes samples,
// then exports syndec.jsonl, sft.jsonl and dpo.jsonl.
SynthesizeSummary CmdSynthesize(const RunOptions& options, Backend& backend,
                                std::ostream& progress,
                                const std::atomic<bool>* stop = nullptr);

// Re-exports the stored samples of a golden run.
ExportSummary CmdExport(const std::filesystem::path& runs_root,
                        const std::string& run_id, std::ostream& progress);

struct CostSection {
  CostReport per_claim;
  CostReport total;
};

struct EvalReport {
  std::string run_id;
  std::string condition;
  int items = 0;
  int unscored = 0;  // outcomes with no gold verdict in the corpus
  double threshold = kDefaultEvidenceThreshold;
  double accuracy = 0;
  double averitec_score = 0;
  std::optional<double> fpr_nee;
  std::optional<double> fpr_cec;
  RoundHistogram round_histogram;
  CostSection cost;
};

struct EvaluateOptions {
  std::filesystem::path runs_root = "runs";
  std::string run_id;
  // Default to the values recorded in the run manifest.
  std::optional<std::filesystem::path> corpus;
  std::optional<EvidenceCondition> condition;
  std::optional<std::filesystem::path> retrieved_file;
  std::optional<std::filesystem::path> pricing;
  double threshold = kDefaultEvidenceThreshold;
};

// Builds the report and writes report.json and report.txt into the run
// directory. Throws MissingOutcomes for unknown or empty runs.
EvalReport CmdEvaluate(const EvaluateOptions& options, std::ostream& progress);

// Report from already-joined items plus the run's token usage.
EvalReport BuildEvalReport(const std::vector<EvalItem>& items,
                           const std::vector<DebateOutcome>& outcomes,
                           const PricingTable& pricing, double threshold);

OrderedJson EvalReportJson(const EvalReport& report);
std::string EvalReportTable(const EvalReport& report);

}  // namespace debatecheck

#endif  // DEBATECHECK_COMMANDS_H_
