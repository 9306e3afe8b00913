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

#include "debatecheck/syndec.h"

#include <map>
#include <mutex>
#include <ostream>

#include <json.hpp>

#include "debatecheck/codec.h"
#include "debatecheck/errors.h"
#include "debatecheck/worker_pool.h"

namespace debatecheck {
namespace {

using Json = nlohmann::json;

constexpr char kVerdictJustification[] = "Justification for Verdict";

bool IsCorrect(const SynDecSample& s) {
  return s.claim.gold_verdict &&
         *s.claim.gold_verdict == s.outcome.predicted_verdict;
}

// Index of the Moderator turn that carries the verdict (the last one).
std::size_t FinalModeratorIndex(const DebateOutcome& o) {
  if (o.decisions.empty()) throw Error("outcome has no moderator turns");
  return o.decisions.size() - 1;
}

std::string PrimaryInsights(const DebateOutcome& o) {
  for (auto it = o.decisions.rbegin(); it != o.decisions.rend(); ++it) {
    if (*it && !(*it)->primary_insight.empty()) return (*it)->primary_insight;
  }
  return "";
}

// Canonical final message for `o` with the verdict and justification
// replaced.
std::string FinalMessage(const DebateOutcome& o, Verdict verdict,
                         const std::string& justification) {
  const auto& last = o.decisions[FinalModeratorIndex(o)];
  if (o.forced_final || !last) {
    return RenderFinalVerdictJson(verdict, justification);
  }
  ModeratorDecision d = *last;
  d.proceeding = false;
  d.verdict = verdict;
  d.verdict_justification = justification;
  return RenderDecisionJson(d);
}

}  // namespace

Partition PartitionSamples(const std::vector<SynDecSample>& samples) {
  Partition p;
  for (const auto& s : samples) {
    (IsCorrect(s) ? p.correct : p.error).push_back(s);
  }
  return p;
}

std::string CorrectJustification(const SynDecSample& sample, Gateway& gateway,
                                 const SynthesisConfig& config,
                                 const TemplateStore& templates) {
  if (!sample.claim.gold_verdict) {
    throw PreconditionViolated("claim " + sample.claim.id +
                               " has no gold verdict");
  }
  if (IsCorrect(sample)) {
    throw PreconditionViolated("claim " + sample.claim.id +
                               " was predicted correctly; nothing to correct");
  }
  const std::string prompt = templates.Render(
      TemplateId::kCorrector,
      {{"DEBATE_RECORDING", SerializeRecording(sample.outcome.recording)},
       {"Primary_Insights", PrimaryInsights(sample.outcome)},
       {"GT_VERDICT", std::string(DisplayString(*sample.claim.gold_verdict))}});

  ChatRequest req;
  req.model_id = config.corrector_model.empty() ? config.debate.moderator_model
                                                : config.corrector_model;
  req.params = config.debate.params;
  req.route = {sample.claim.id, Role::kCorrector, 0, TemplateId::kCorrector};
  for (int attempt = 0; attempt <= config.correction_parse_retries; ++attempt) {
    req.messages = {
        {"user", attempt == 0 ? prompt : prompt + "\n\n" + kJsonReminder}};
    ChatResponse r = gateway.Complete(req);
    if (auto obj = ExtractFirstJsonObject(r.content)) {
      Json j = Json::parse(*obj);
      if (j.contains(kVerdictJustification) &&
          j.at(kVerdictJustification).is_string()) {
        std::string text = j.at(kVerdictJustification).get<std::string>();
        if (text.find_first_not_of(" \t\r\n") != std::string::npos) {
          return text;
        }
      }
    }
  }
  throw MalformedCorrection("claim " + sample.claim.id + ": no usable \"" +
                            kVerdictJustification + "\" after " +
                            std::to_string(config.correction_parse_retries + 1) +
                            " attempt(s)");
}

SynthesisReport Synthesize(const std::vector<Claim>& claims,
                           const SynthesisConfig& config, Gateway& gateway,
                           RunStore* store, const std::atomic<bool>* stop) {
  DebateEngine engine(gateway, config.debate);
  std::vector<std::optional<SynDecSample>> slots(claims.size());
  SynthesisReport report;
  std::mutex mu;

  std::map<std::string, SynDecSample> stored;
  if (store) {
    for (auto& s : store->LoadSamples().records) {
      stored.emplace(s.claim.id, std::move(s));
    }
  }

  auto fail = [&](const Claim& c, const std::string& stage,
                  const std::string& msg) {
    std::lock_guard<std::mutex> lock(mu);
    report.failures.push_back({c.id, stage, msg});
  };

  ParallelFor(
      claims.size(), config.workers,
      [&](std::size_t i) {
        const Claim& claim = claims[i];
        if (auto it = stored.find(claim.id); it != stored.end()) {
          slots[i] = it->second;
          return;
        }
        if (!claim.gold_verdict) {
          fail(claim, "precondition", "claim has no gold verdict");
          return;
        }
        SynDecSample sample;
        sample.claim = claim;
        std::optional<DebateOutcome> prior =
            store ? store->LoadOutcome(claim.id) : std::nullopt;
        if (prior) {
          sample.outcome = std::move(*prior);
        } else {
          try {
            sample.outcome = engine.Run(claim);
          } catch (const std::exception& e) {
            fail(claim, "debate", e.what());
            return;
          }
          {
            std::lock_guard<std::mutex> lock(mu);
            ++report.debates_run;
          }
          if (store) store->PersistOutcome(sample.outcome);
        }
        if (!IsCorrect(sample)) {
          try {
            sample.corrected_justification =
                CorrectJustification(sample, gateway, config);
          } catch (const std::exception& e) {
            fail(claim, "correction", e.what());
            return;
          }
          std::lock_guard<std::mutex> lock(mu);
          ++report.corrections_run;
        }
        if (store) store->PersistSample(sample);
        slots[i] = std::move(sample);
      },
      stop);

  for (auto& s : slots) {
    if (s) report.samples.push_back(std::move(*s));
  }
  return report;
}

std::vector<ChatMessage> ModeratorDialogue(const SynDecSample& sample,
                                           const TemplateStore& templates) {
  const Claim& claim = sample.claim;
  const DebateOutcome& o = sample.outcome;
  std::vector<ChatMessage> msgs = {
      {"system", templates.Render(TemplateId::kModeratorMeta,
                                  {{"CLAIM", claim.text},
                                   {"EVIDENCE_SET",
                                    RenderEvidenceSet(claim.evidence)}})}};

  std::map<int, std::string> aff, neg;
  std::string last_aff, last_neg;
  std::size_t mod_index = 0;
  for (const auto& turn : o.recording) {
    switch (turn.role) {
      case Role::kAffirmative:
        aff[turn.round] = last_aff = turn.content;
        break;
      case Role::kNegative:
        neg[turn.round] = last_neg = turn.content;
        break;
      case Role::kModerator: {
        const auto& decision = o.decisions.at(mod_index++);
        if (turn.prompt_id == TemplateId::kModeratorFinal) {
          msgs.push_back({"user", templates.Render(
                                      TemplateId::kModeratorFinal,
                                      {{"AFFIRMATIVE_ARGUMENT", last_aff},
                                       {"NEGATIVE_ARGUMENT", last_neg},
                                       {"CLAIM", claim.text}})});
          msgs.push_back(
              {"assistant",
               decision ? RenderFinalVerdictJson(
                              *decision->verdict,
                              decision->verdict_justification.value_or(""))
                        : turn.content});
        } else {
          msgs.push_back(
              {"user", templates.Render(
                           TemplateId::kModeratorRound,
                           {{"ROUND_NUMBER", std::to_string(turn.round)},
                            {"AFFIRMATIVE_ARGUMENT", aff[turn.round]},
                            {"NEGATIVE_ARGUMENT", neg[turn.round]}})});
          msgs.push_back({"assistant", decision ? RenderDecisionJson(*decision)
                                                : turn.content});
        }
        break;
      }
      case Role::kCorrector:
        break;
    }
  }
  return msgs;
}

SftDialogue BuildSftRecord(const SynDecSample& sample) {
  SftDialogue d;
  d.messages = ModeratorDialogue(sample);
  // The target carries ŷ (= y here) and the Moderator's own justification.
  d.messages.back().content =
      FinalMessage(sample.outcome, sample.outcome.predicted_verdict,
                   sample.outcome.predicted_justification);
  return d;
}

PreferencePair BuildDpoRecord(const SynDecSample& sample) {
  if (!sample.corrected_justification) {
    throw PreconditionViolated("claim " + sample.claim.id +
                               " has no corrected justification");
  }
  if (!sample.claim.gold_verdict) {
    throw PreconditionViolated("claim " + sample.claim.id +
                               " has no gold verdict");
  }
  auto dialogue = ModeratorDialogue(sample);
  PreferencePair p;
  p.prompt.assign(dialogue.begin(), dialogue.end() - 1);
  p.chosen = {"assistant",
              FinalMessage(sample.outcome, *sample.claim.gold_verdict,
                           *sample.corrected_justification)};
  p.rejected = {"assistant",
                FinalMessage(sample.outcome, sample.outcome.predicted_verdict,
                             sample.outcome.predicted_justification)};
  if (p.chosen == p.rejected) {
    throw PreconditionViolated("claim " + sample.claim.id +
                               ": chosen and rejected responses are identical");
  }
  return p;
}

Verdict ExportedVerdict(const std::string& content) {
  try {
    auto d = ParseModeratorDecision(content);
    if (d.verdict) return *d.verdict;
  } catch (const MalformedDecision&) {
  }
  return *ParseFinalVerdict(content).verdict;
}

int WriteSft(const std::vector<SynDecSample>& correct, std::ostream& out) {
  int n = 0;
  for (const auto& s : correct) {
    OrderedJson j;
    auto& msgs = j["messages"] = OrderedJson::array();
    for (const auto& m : BuildSftRecord(s).messages) {
      msgs.push_back(EncodeMessage(m));
    }
    out << j.dump() << "\n";
    ++n;
  }
  return n;
}

int WriteDpo(const std::vector<SynDecSample>& error, std::ostream& out,
             int* skipped) {
  int n = 0;
  int skip = 0;
  for (const auto& s : error) {
    if (!s.corrected_justification) {
      ++skip;
      continue;
    }
    out << EncodePair(BuildDpoRecord(s)).dump() << "\n";
    ++n;
  }
  if (skipped) *skipped = skip;
  return n;
}

int WriteSamples(const std::vector<SynDecSample>& samples, std::ostream& out) {
  for (const auto& s : samples) out << EncodeSample(s).dump() << "\n";
  return static_cast<int>(samples.size());
}

SftDialogue ParseSftLine(const std::string& line) {
  Json j = Json::parse(line);
  SftDialogue d;
  for (const auto& m : j.at("messages")) d.messages.push_back(DecodeMessage(m));
  if (d.messages.empty()) throw Error("SFT record has no messages");
  return d;
}

PreferencePair ParseDpoLine(const std::string& line) {
  return DecodePair(Json::parse(line));
}

}  // namespace debatecheck
