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

#include "debatecheck/commands.h"

#include <algorithm>
#include <chrono>
#include <ctime>
#include <iomanip>
#include <map>
#include <mutex>
#include <ostream>
#include <sstream>

#include "debatecheck/errors.h"
#include "debatecheck/http_backend.h"
#include "debatecheck/meteor.h"
#include "debatecheck/scripted_backend.h"
#include "debatecheck/syndec.h"
#include "debatecheck/worker_pool.h"

namespace debatecheck {

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

std::string UtcTimestamp(const char* format = "%Y-%m-%dT%H:%M:%SZ") {
  std::time_t now = std::chrono::system_clock::to_time_t(
      std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[64];
  std::strftime(buf, sizeof(buf), format, &tm);
  return buf;
}

std::string ResolveRunId(const RunOptions& options) {
  if (!options.run_id.empty()) return options.run_id;
  return "run-" + UtcTimestamp("%Y%m%d-%H%M%S");
}

void CheckCorpusPath(const RunOptions& options) {
  if (options.corpus.empty()) throw UsageError("--corpus is required");
  if (!fs::exists(options.corpus)) {
    throw UsageError("corpus not found: " + options.corpus.string());
  }
  if (options.condition == EvidenceCondition::kRetrieved &&
      !options.retrieved_file) {
    throw UsageError("--condition retrieved needs --retrieved-file");
  }
  if (options.workers < 1) throw UsageError("--workers must be >= 1");
}

// Writes the manifest before any model call. A resumed run keeps its creation
// time and must keep its evidence condition.
void WriteRunManifest(RunStore& store, const RunOptions& options,
                      const std::string& command) {
  std::string created = UtcTimestamp();
  if (auto old = store.ReadManifest()) {
    const std::string old_condition = old->value("condition", "");
    if (!old_condition.empty() &&
        old_condition != ConditionName(options.condition)) {
      throw UsageError("run " + store.run_id() + " was created with condition " +
                       old_condition + ", not " +
                       std::string(ConditionName(options.condition)));
    }
    created = old->value("created_at", created);
  }
  OrderedJson m;
  m["run_id"] = store.run_id();
  m["command"] = command;
  m["condition"] = std::string(ConditionName(options.condition));
  m["corpus"] = fs::absolute(options.corpus).string();
  m["retrieved_file"] = options.retrieved_file
                            ? OrderedJson(fs::absolute(*options.retrieved_file).string())
                            : OrderedJson(nullptr);
  m["backend"] = options.backend;
  m["debater_model"] = options.debate.debater_model;
  m["moderator_model"] = options.debate.moderator_model;
  OrderedJson cfg;
  cfg["max_rounds"] = options.debate.max_rounds;
  cfg["moderator_parse_retries"] = options.debate.moderator_parse_retries;
  cfg["max_new_tokens"] = options.debate.params.max_new_tokens;
  cfg["temperature"] = options.debate.params.temperature;
  cfg["top_p"] = options.debate.params.top_p;
  cfg["workers"] = options.workers;
  cfg["retry_max_attempts"] = options.retry.max_attempts;
  cfg["retry_base_delay_ms"] = options.retry.base_delay.count();
  cfg["retry_multiplier"] = options.retry.multiplier;
  cfg["requests_per_minute"] = options.requests_per_minute;
  m["config"] = cfg;
  m["created_at"] = created;
  m["updated_at"] = UtcTimestamp();
  store.WriteManifest(m);
}

void WriteSortedFailures(RunStore& store, std::vector<FailureRecord> failures) {
  std::sort(failures.begin(), failures.end(),
            [](const FailureRecord& a, const FailureRecord& b) {
              return a.claim_id < b.claim_id;
            });
  store.WriteFailures(failures);
}

void RequireGoldenManifest(const RunStore& store) {
  auto manifest = store.ReadManifest();
  if (!manifest) return;
  const std::string cond = manifest->value("condition", "golden");
  if (cond != ConditionName(EvidenceCondition::kGolden)) {
    throw UsageError("run " + store.run_id() + " uses the " + cond +
                     " evidence condition; training data is only synthesized "
                     "from golden (human-annotated) evidence");
  }
}

std::string Fixed(double v, int places) {
  std::ostringstream os;
  os << std::fixed << std::setprecision(places) << v;
  return os.str();
}

OrderedJson CostJson(const CostReport& r) {
  auto line_json = [](const CostLine& l) {
    OrderedJson j;
    j["role"] = l.role;
    j["model"] = l.model;
    j["input_tokens"] = std::stod(FormatDecimal(l.input_tokens, 2));
    j["input_cost"] = FormatDecimal(l.input_cost);
    j["output_tokens"] = std::stod(FormatDecimal(l.output_tokens, 2));
    j["output_cost"] = FormatDecimal(l.output_cost);
    j["total_cost"] = FormatDecimal(l.total_cost);
    j["estimated_tokens"] = l.estimated;
    return j;
  };
  OrderedJson j;
  auto& lines = j["roles"] = OrderedJson::array();
  for (const auto& l : r.lines) lines.push_back(line_json(l));
  j["total"] = line_json(r.total);
  return j;
}

}  // namespace

std::unique_ptr<Backend> MakeBackend(const RunOptions& options) {
  if (options.backend == "scripted") {
    if (!options.fixtures) {
      throw UsageError("--backend scripted needs --fixtures");
    }
    return ScriptedBackend::FromFile(*options.fixtures);
  }
  if (options.backend == "http") {
    return std::make_unique<HttpBackend>(HttpBackendConfigFromEnv());
  }
  throw UsageError("unknown backend: " + options.backend +
                   " (expected http or scripted)");
}

VerifySummary CmdVerify(const RunOptions& options, Backend& backend,
                        std::ostream& progress, const std::atomic<bool>* stop) {
  CheckCorpusPath(options);
  auto claims =
      LoadCorpus(options.corpus, options.condition, options.retrieved_file);

  RunStore store(options.runs_root, ResolveRunId(options));
  WriteRunManifest(store, options, "verify");

  VerifySummary summary;
  summary.run_id = store.run_id();
  summary.claims = static_cast<int>(claims.size());
  const auto done = store.PersistedOutcomeIds();
  std::vector<const Claim*> todo;
  for (const auto& c : claims) {
    if (done.count(c.id)) {
      ++summary.already_persisted;
    } else {
      todo.push_back(&c);
    }
  }
  progress << "run " << store.run_id() << ": " << claims.size() << " claims, "
           << summary.already_persisted << " already done, " << todo.size()
           << " to debate\n";

  RateBudget budget(options.requests_per_minute);
  UsageLedger ledger;
  Gateway gateway(backend, options.retry, &budget, &ledger);
  DebateEngine engine(gateway, options.debate);

  std::mutex mu;
  std::vector<FailureRecord> failures;
  int finished = 0;
  ParallelFor(
      todo.size(), options.workers,
      [&](std::size_t i) {
        const Claim& claim = *todo[i];
        try {
          DebateOutcome outcome = engine.Run(claim);
          store.PersistOutcome(outcome);
          std::lock_guard<std::mutex> lock(mu);
          ++summary.executed;
          progress << "[" << ++finished << "/" << todo.size() << "] claim "
                   << claim.id << ": " << DisplayString(outcome.predicted_verdict)
                   << " after " << outcome.rounds_used << " round(s)"
                   << (outcome.forced_final ? " (forced final)" : "") << "\n";
        } catch (const Error& e) {
          std::lock_guard<std::mutex> lock(mu);
          ++summary.failed;
          failures.push_back({claim.id, "debate", e.what()});
          progress << "[" << ++finished << "/" << todo.size() << "] claim "
                   << claim.id << " failed: " << e.what() << "\n";
        }
      },
      stop);

  WriteSortedFailures(store, std::move(failures));
  store.FlushIndex();
  summary.interrupted = stop && stop->load();
  progress << "run " << store.run_id() << ": " << summary.executed
           << " debated, " << summary.failed << " failed"
           << (summary.interrupted ? ", interrupted" : "") << "\n";
  return summary;
}

SynthesizeSummary CmdSynthesize(const RunOptions& options, Backend& backend,
                                std::ostream& progress,
                                const std::atomic<bool>* stop) {
  if (options.condition != EvidenceCondition::kGolden) {
    throw UsageError(
        "synthesis runs on golden (human-annotated) evidence only; got --condition " +
        std::string(ConditionName(options.condition)));
  }
  CheckCorpusPath(options);
  auto claims = LoadCorpus(options.corpus, EvidenceCondition::kGolden);

  RunStore store(options.runs_root, ResolveRunId(options));
  RequireGoldenManifest(store);
  WriteRunManifest(store, options, "synthesize");

  RateBudget budget(options.requests_per_minute);
  Gateway gateway(backend, options.retry, &budget);
  SynthesisConfig cfg;
  cfg.debate = options.debate;
  cfg.workers = options.workers;
  progress << "run " << store.run_id() << ": synthesizing over "
           << claims.size() << " claims\n";
  SynthesisReport report = Synthesize(claims, cfg, gateway, &store, stop);

  SynthesizeSummary summary;
  summary.run_id = store.run_id();
  summary.claims = static_cast<int>(claims.size());
  summary.debates_run = report.debates_run;
  summary.corrections_run = report.corrections_run;
  summary.failed = static_cast<int>(report.failures.size());
  summary.interrupted = stop && stop->load();
  WriteSortedFailures(store, report.failures);
  store.FlushIndex();
  progress << "run " << store.run_id() << ": " << report.debates_run
           << " debates, " << report.corrections_run << " corrections, "
           << summary.failed << " failures\n";
  summary.exported = CmdExport(options.runs_root, store.run_id(), progress);
  return summary;
}

ExportSummary CmdExport(const fs::path& runs_root, const std::string& run_id,
                        std::ostream& progress) {
  if (!RunStore::Exists(runs_root, run_id)) {
    throw MissingOutcomes("no run named " + run_id + " under " +
                          runs_root.string());
  }
  RunStore store(runs_root, run_id);
  RequireGoldenManifest(store);
  auto loaded = store.LoadSamples();
  Partition parts = PartitionSamples(loaded.records);

  ExportSummary summary;
  summary.samples = static_cast<int>(loaded.records.size());
  summary.corrupt = static_cast<int>(loaded.corrupt.size());
  std::ostringstream syndec, sft, dpo;
  WriteSamples(loaded.records, syndec);
  summary.sft = WriteSft(parts.correct, sft);
  summary.dpo = WriteDpo(parts.error, dpo, &summary.skipped);
  AtomicWrite(store.dir() / "syndec.jsonl", syndec.str());
  AtomicWrite(store.dir() / "sft.jsonl", sft.str());
  AtomicWrite(store.dir() / "dpo.jsonl", dpo.str());

  if (summary.samples == 0) {
    progress << "warning: run " << run_id
             << " has no synthesized samples; wrote empty files\n";
  }
  for (const auto& name : loaded.corrupt) {
    progress << "warning: skipped corrupt sample file " << name << "\n";
  }
  if (summary.skipped > 0) {
    progress << "warning: " << summary.skipped
             << " error sample(s) lack a corrected justification\n";
  }
  progress << "exported " << summary.samples << " samples: sft.jsonl "
           << summary.sft << ", dpo.jsonl " << summary.dpo << "\n";
  return summary;
}

EvalReport BuildEvalReport(const std::vector<EvalItem>& items,
                           const std::vector<DebateOutcome>& outcomes,
                           const PricingTable& pricing, double threshold) {
  if (items.empty()) throw MissingOutcomes("no scored outcomes to evaluate");
  EvalReport r;
  r.items = static_cast<int>(items.size());
  r.threshold = threshold;
  r.accuracy = Accuracy(items);
  r.averitec_score = AveritecScore(items, threshold);
  try {
    r.fpr_nee = FprNeutral(items, Verdict::kNotEnoughEvidence);
  } catch (const UndefinedDenominator&) {
  }
  try {
    r.fpr_cec = FprNeutral(items, Verdict::kConflictingEvidenceCherryPicking);
  } catch (const UndefinedDenominator&) {
  }
  r.round_histogram = RoundDistribution(items);

  TokenUsage usage;
  for (const auto& o : outcomes) {
    for (const auto& [role, tc] : o.token_usage) {
      auto key = role;
      auto it = usage.find(key);
      if (it != usage.end() && it->second.model != tc.model) {
        key = role + "@" + tc.model;
      }
      auto& slot = usage[key];
      slot.model = tc.model;
      slot.input_tokens += tc.input_tokens;
      slot.output_tokens += tc.output_tokens;
      slot.estimated = slot.estimated || tc.estimated;
    }
  }
  const Exact claims(static_cast<long long>(std::max<std::size_t>(1, outcomes.size())));
  r.cost.per_claim = ComputeCost(usage, pricing, claims);
  r.cost.total = ComputeCost(usage, pricing);
  return r;
}

EvalReport CmdEvaluate(const EvaluateOptions& options, std::ostream& progress) {
  if (options.run_id.empty()) throw UsageError("--run-id is required");
  if (!RunStore::Exists(options.runs_root, options.run_id)) {
    throw MissingOutcomes("no run named " + options.run_id + " under " +
                          options.runs_root.string());
  }
  RunStore store(options.runs_root, options.run_id);
  auto manifest = store.ReadManifest().value_or(Json::object());
  auto loaded = store.LoadOutcomes();
  for (const auto& name : loaded.corrupt) {
    progress << "warning: skipped corrupt outcome file " << name << "\n";
  }
  if (loaded.records.empty()) {
    throw MissingOutcomes("run " + options.run_id + " has no outcomes");
  }

  fs::path corpus = options.corpus ? *options.corpus
                                   : fs::path(manifest.value("corpus", ""));
  if (corpus.empty()) throw UsageError("--corpus is required (no manifest)");
  EvidenceCondition condition =
      options.condition
          ? *options.condition
          : ParseCondition(manifest.value("condition", "golden"));
  std::optional<fs::path> retrieved = options.retrieved_file;
  if (!retrieved && manifest.contains("retrieved_file") &&
      manifest.at("retrieved_file").is_string()) {
    retrieved = manifest.at("retrieved_file").get<std::string>();
  }

  auto gold = LoadCorpus(corpus, EvidenceCondition::kGolden);
  std::map<std::string, const Claim*> by_id;
  for (const auto& c : gold) by_id[c.id] = &c;
  std::map<std::string, std::vector<EvidenceItem>> retrieved_ev;
  if (condition == EvidenceCondition::kRetrieved) {
    if (!retrieved) throw UsageError("retrieved condition needs --retrieved-file");
    for (auto& [id, ev] : LoadRetrievedEvidence(*retrieved)) {
      retrieved_ev[id] = std::move(ev);
    }
  }

  std::vector<EvalItem> items;
  int unscored = 0;
  for (const auto& o : loaded.records) {
    auto it = by_id.find(o.claim_id);
    if (it == by_id.end() || !it->second->gold_verdict) {
      ++unscored;
      continue;
    }
    EvalItem item;
    item.claim_id = o.claim_id;
    item.predicted = o.predicted_verdict;
    item.gold = *it->second->gold_verdict;
    item.rounds_used = o.rounds_used;
    switch (condition) {
      case EvidenceCondition::kGolden:
        item.evidence_score = 1.0;
        break;
      case EvidenceCondition::kNoEvidence:
        item.evidence_score = 0.0;
        break;
      case EvidenceCondition::kRetrieved: {
        const auto& gold_ev = it->second->evidence;
        auto rit = retrieved_ev.find(o.claim_id);
        item.evidence_score =
            gold_ev.empty() || rit == retrieved_ev.end()
                ? 0.0
                : EvidenceScore(rit->second, gold_ev);
        break;
      }
    }
    items.push_back(std::move(item));
  }

  PricingTable pricing = options.pricing ? PricingTable::FromFile(*options.pricing)
                                         : PricingTable::Default();
  EvalReport report =
      BuildEvalReport(items, loaded.records, pricing, options.threshold);
  report.run_id = options.run_id;
  report.condition = std::string(ConditionName(condition));
  report.unscored = unscored;

  AtomicWrite(store.dir() / "report.json", EvalReportJson(report).dump(2) + "\n");
  const std::string table = EvalReportTable(report);
  AtomicWrite(store.dir() / "report.txt", table);
  progress << table;
  return report;
}

OrderedJson EvalReportJson(const EvalReport& r) {
  OrderedJson j;
  j["run_id"] = r.run_id;
  j["condition"] = r.condition;
  j["items"] = r.items;
  j["unscored"] = r.unscored;
  j["accuracy"] = r.accuracy;
  j["averitec_score"] = r.averitec_score;
  j["evidence_threshold"] = r.threshold;
  j["fpr_not_enough_evidence"] = r.fpr_nee ? OrderedJson(*r.fpr_nee) : OrderedJson(nullptr);
  j["fpr_conflicting_evidence"] = r.fpr_cec ? OrderedJson(*r.fpr_cec) : OrderedJson(nullptr);
  auto& hist = j["round_histogram"] = OrderedJson::object();
  for (const auto& [rounds, counts] : r.round_histogram) {
    hist[std::to_string(rounds)] = {{"correct", counts.correct},
                                    {"incorrect", counts.incorrect}};
  }
  j["cost_per_claim"] = CostJson(r.cost.per_claim);
  j["cost_total"] = CostJson(r.cost.total);
  return j;
}

std::string EvalReportTable(const EvalReport& r) {
  std::ostringstream os;
  auto pct = [](double v) { return Fixed(100.0 * v, 1); };
  os << "run " << r.run_id << " (" << r.condition << " evidence), " << r.items
     << " claims";
  if (r.unscored > 0) os << ", " << r.unscored << " unscored";
  os << "\n\n";
  os << std::left << std::setw(28) << "metric" << std::right << std::setw(10)
     << "value" << "\n";
  os << std::left << std::setw(28) << "Acc." << std::right << std::setw(10)
     << pct(r.accuracy) << "\n";
  os << std::left << std::setw(28) << "AVer. (>= " + Fixed(r.threshold, 2) + ")"
     << std::right << std::setw(10) << pct(r.averitec_score) << "\n";
  os << std::left << std::setw(28) << "FPR NEE" << std::right << std::setw(10)
     << (r.fpr_nee ? pct(*r.fpr_nee) : std::string("n/a")) << "\n";
  os << std::left << std::setw(28) << "FPR CEC" << std::right << std::setw(10)
     << (r.fpr_cec ? pct(*r.fpr_cec) : std::string("n/a")) << "\n\n";

  os << std::left << std::setw(8) << "rounds" << std::right << std::setw(10)
     << "correct" << std::setw(12) << "incorrect" << "\n";
  for (const auto& [rounds, c] : r.round_histogram) {
    os << std::left << std::setw(8) << rounds << std::right << std::setw(10)
       << c.correct << std::setw(12) << c.incorrect << "\n";
  }
  os << "\n";

  os << "cost per claim (USD)\n";
  os << std::left << std::setw(24) << "role" << std::right << std::setw(12)
     << "in tokens" << std::setw(10) << "in $" << std::setw(12) << "out tokens"
     << std::setw(10) << "out $" << std::setw(10) << "total $" << "\n";
  auto row = [&](const CostLine& l) {
    std::string name = l.role + (l.estimated ? "*" : "");
    os << std::left << std::setw(24) << name << std::right << std::setw(12)
       << FormatDecimal(l.input_tokens, 2) << std::setw(10)
       << FormatDecimal(l.input_cost) << std::setw(12)
       << FormatDecimal(l.output_tokens, 2) << std::setw(10)
       << FormatDecimal(l.output_cost) << std::setw(10)
       << FormatDecimal(l.total_cost) << "\n";
  };
  for (const auto& l : r.cost.per_claim.lines) row(l);
  row(r.cost.per_claim.total);
  if (r.cost.per_claim.total.estimated) {
    os << "* token counts estimated locally (whitespace tokens x 1.3)\n";
  }
  return os.str();
}

}  // namespace debatecheck
