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

// Debate data synthesis over labeled claims: zero-shot debates, the
// correct/error split, Corrector rewrites for the errors, and export of the
// fine-tuning (SFT) and preference (DPO) datasets.

#ifndef DEBATECHECK_SYNDEC_H_
#define DEBATECHECK_SYNDEC_H_

#include <atomic>
#include <iosfwd>
#include <string>
#include <vector>

#include "debatecheck/corpus.h"
#include "debatecheck/debate.h"
#include "debatecheck/gateway.h"
#include "debatecheck/model.h"

namespace debatecheck {

struct SynthesisConfig {
  DebateConfig debate;
  // Empty means debate.moderator_model.
  std::string corrector_model;
  int correction_parse_retries = 1;
  int workers = 1;
};

struct SftDialogue {
  std::vector<ChatMessage> messages;

  const ChatMessage& target() const { return messages.back(); }
  friend bool operator==(const SftDialogue&, const SftDialogue&) = default;
};

struct Partition {
  std::vector<SynDecSample> correct;
  std::vector<SynDecSample> error;
};

// stage is "precondition", "debate" or "correction".
using SynthesisFailure = FailureRecord;

struct SynthesisReport {
  std::vector<SynDecSample> samples;  // input order
  std::vector<SynthesisFailure> failures;
  int debates_run = 0;
  int corrections_run = 0;
};

// Splits on ŷ == y. Samples without a gold verdict land in `error`.
Partition PartitionSamples(const std::vector<SynDecSample>& samples);

// Asks the Corrector for a justification of the gold verdict. Throws
// PreconditionViolated when ŷ == y (or there is no gold verdict) and
// MalformedCorrection when no reply yields a non-empty "Justification for
// Verdict".
std::string CorrectJustification(
    const SynDecSample& sample, Gateway& gateway, const SynthesisConfig& config,
    const TemplateStore& templates = TemplateStore::Builtin());

// Runs debates (reusing any outcome already in `store`), corrects the errors
// and persists samples. Claims whose sample is already stored are loaded, not
// re-run. Per-claim failures are recorded and skipped. `store` may be null.
SynthesisReport Synthesize(const std::vector<Claim>& claims,
                           const SynthesisConfig& config, Gateway& gateway,
                           RunStore* store = nullptr,
                           const std::atomic<bool>* stop = nullptr);

// The Moderator's side of a debate as a chat: system meta prompt, then one
// user prompt and one assistant reply per Moderator turn. Assistant replies
// that parsed are emitted in canonical JSON form.
std::vector<ChatMessage> ModeratorDialogue(
    const SynDecSample& sample,
    const TemplateStore& templates = TemplateStore::Builtin());

SftDialogue BuildSftRecord(const SynDecSample& sample);
// Throws PreconditionViolated when the sample has no corrected justification.
PreferencePair BuildDpoRecord(const SynDecSample& sample);

// Reads the verdict out of an exported assistant message.
Verdict ExportedVerdict(const std::string& content);

struct ExportCounts {
  int sft = 0;
  int dpo = 0;
  int skipped = 0;  // error samples without a corrected justification
};

// One JSON object per line: {"messages": [...]}.
int WriteSft(const std::vector<SynDecSample>& correct, std::ostream& out);
// One JSON object per line: {"prompt": [...], "chosen": {...},
// "rejected": {...}}. Returns pairs written; `skipped` counts samples
// without j′.
int WriteDpo(const std::vector<SynDecSample>& error, std::ostream& out,
             int* skipped = nullptr);
int WriteSamples(const std::vector<SynDecSample>& samples, std::ostream& out);

SftDialogue ParseSftLine(const std::string& line);
PreferencePair ParseDpoLine(const std::string& line);

}  // namespace debatecheck

#endif  // DEBATECHECK_SYNDEC_H_
