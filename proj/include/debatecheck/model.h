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

// Domain types shared by every module: verdicts, claims, debate turns and
// outcomes, synthesized samples and preference pairs. All are plain value
// types, immutable in practice once built.

#ifndef DEBATECHECK_MODEL_H_
#define DEBATECHECK_MODEL_H_

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace debatecheck {

enum class Verdict {
  kSupported,
  kRefuted,
  kNotEnoughEvidence,
  kConflictingEvidenceCherryPicking,
};

inline constexpr std::array<Verdict, 4> kAllVerdicts = {
    Verdict::kSupported, Verdict::kRefuted, Verdict::kNotEnoughEvidence,
    Verdict::kConflictingEvidenceCherryPicking};

// Label exactly as the prompts spell it, e.g. "Conflicting
// Evidence/Cherry-picking".
std::string_view DisplayString(Verdict v);

// Maps free text onto one of the four verdicts. Trims, case-folds and
// collapses whitespace; slash/hyphen/space variants of the fourth label are
// accepted. Throws UnknownVerdict.
Verdict NormalizeVerdict(std::string_view raw);

// Same as NormalizeVerdict but returns nullopt instead of throwing.
std::optional<Verdict> TryNormalizeVerdict(std::string_view raw);

struct EvidenceItem {
  std::string question;
  std::string answer;
  std::string source_url;

  friend bool operator==(const EvidenceItem&, const EvidenceItem&) = default;
};

struct Claim {
  std::string id;
  std::string text;
  std::optional<Verdict> gold_verdict;
  std::vector<EvidenceItem> evidence;

  friend bool operator==(const Claim&, const Claim&) = default;
};

enum class Role { kAffirmative, kNegative, kModerator, kCorrector };

std::string_view RoleName(Role r);
Role ParseRole(std::string_view name);

enum class TemplateId {
  kDebaterMeta,
  kModeratorMeta,
  kAffirmativeOpen,
  kNegativeRebuttal,
  kInteraction,
  kModeratorRound,
  kModeratorFinal,
  kCorrector,
};

inline constexpr std::array<TemplateId, 8> kAllTemplates = {
    TemplateId::kDebaterMeta,      TemplateId::kModeratorMeta,
    TemplateId::kAffirmativeOpen,  TemplateId::kNegativeRebuttal,
    TemplateId::kInteraction,      TemplateId::kModeratorRound,
    TemplateId::kModeratorFinal,   TemplateId::kCorrector};

std::string_view TemplateName(TemplateId id);
// Throws UnknownTemplate.
TemplateId ParseTemplateId(std::string_view name);

struct DebateTurn {
  Role role = Role::kAffirmative;
  int round = 1;
  TemplateId prompt_id = TemplateId::kAffirmativeOpen;
  std::string content;

  friend bool operator==(const DebateTurn&, const DebateTurn&) = default;
};

// Parsed Moderator output. A decision with proceeding == false always has a
// verdict and a verdict justification; proceeding == true never has a verdict.
struct ModeratorDecision {
  std::string primary_insight;
  std::string evidence_gaps;
  std::string proceeding_justification;
  bool proceeding = false;
  std::optional<std::string> verdict_justification;
  std::optional<Verdict> verdict;

  friend bool operator==(const ModeratorDecision&,
                         const ModeratorDecision&) = default;
};

struct TokenCount {
  std::string model;
  std::int64_t input_tokens = 0;
  std::int64_t output_tokens = 0;
  bool estimated = false;

  friend bool operator==(const TokenCount&, const TokenCount&) = default;
};

// Per-role token usage, keyed by role name.
using TokenUsage = std::map<std::string, TokenCount>;

struct DebateOutcome {
  std::string claim_id;
  std::vector<DebateTurn> recording;
  // One entry per Moderator turn in `recording`; nullopt when that turn never
  // parsed and was treated as "proceed".
  std::vector<std::optional<ModeratorDecision>> decisions;
  int rounds_used = 0;
  Verdict predicted_verdict = Verdict::kNotEnoughEvidence;
  std::string predicted_justification;
  bool forced_final = false;
  int model_calls = 0;
  TokenUsage token_usage;

  friend bool operator==(const DebateOutcome&, const DebateOutcome&) = default;
};

struct SynDecSample {
  Claim claim;
  DebateOutcome outcome;
  std::optional<std::string> corrected_justification;

  friend bool operator==(const SynDecSample&, const SynDecSample&) = default;
};

struct ChatMessage {
  std::string role;  // "system", "user" or "assistant"
  std::string content;

  friend bool operator==(const ChatMessage&, const ChatMessage&) = default;
};

struct PreferencePair {
  std::vector<ChatMessage> prompt;
  ChatMessage chosen;
  ChatMessage rejected;

  friend bool operator==(const PreferencePair&, const PreferencePair&) = default;
};

}  // namespace debatecheck

#endif  // DEBATECHECK_MODEL_H_
