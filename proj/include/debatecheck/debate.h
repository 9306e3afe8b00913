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

// The debate protocol: Affirmative, Negative and Moderator turns per round,
// Moderator gating after every round, and a forced final verdict once the
// round budget is spent.

#ifndef DEBATECHECK_DEBATE_H_
#define DEBATECHECK_DEBATE_H_

#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "debatecheck/gateway.h"
#include "debatecheck/model.h"
#include "debatecheck/prompts.h"

namespace debatecheck {

struct DebateConfig {
  int max_rounds = 3;
  int moderator_parse_retries = 2;
  std::string debater_model = "gpt-4o-mini";
  std::string moderator_model = "gpt-4o";
  GenerationParams params;
};

inline constexpr char kNoArgumentPlaceholder[] = "(no argument presented)";
inline constexpr char kJsonReminder[] =
    "Reminder: reply with one valid JSON object using exactly the keys shown "
    "above.";

// Returns the first balanced {...} span in `raw` that parses as a JSON
// object. Braces inside JSON strings are respected; code fences need no
// special handling since they sit outside the object.
std::optional<std::string> ExtractFirstJsonObject(std::string_view raw);

// Parses a per-round Moderator reply. Throws MalformedDecision when there is
// no JSON object, "Proceeding Necessity" is missing or not Yes/No, or the
// decision says No without a recognizable Verdict.
ModeratorDecision ParseModeratorDecision(std::string_view raw);

// Parses the reply to the forced-final prompt ({"Justification for Verdict",
// "Verdict"}). The result has proceeding == false. Throws MalformedDecision.
ModeratorDecision ParseFinalVerdict(std::string_view raw);

// Canonical JSON text of a round decision, keys in prompt order. Parses back
// to an equal decision.
std::string RenderDecisionJson(const ModeratorDecision& decision);
// Canonical JSON text of a final verdict.
std::string RenderFinalVerdictJson(Verdict verdict,
                                   std::string_view justification);

struct Continue {
  friend bool operator==(Continue, Continue) = default;
};
struct Finalize {
  Verdict verdict;
  friend bool operator==(Finalize, Finalize) = default;
};
struct ForceFinal {
  friend bool operator==(ForceFinal, ForceFinal) = default;
};
using Continuation = std::variant<Continue, Finalize, ForceFinal>;

Continuation DecideContinuation(const ModeratorDecision& decision, int round,
                                const DebateConfig& config);

// Plain-text transcript, one block per turn: "Round <r> - <Role>: <content>".
std::string SerializeRecording(const std::vector<DebateTurn>& recording);

class DebateEngine {
 public:
  DebateEngine(Gateway& gateway, DebateConfig config,
               const TemplateStore& templates = TemplateStore::Builtin());

  // Runs one debate. Backend failures propagate once the gateway's retries
  // are spent; throws UndecidableDebate when the forced-final reply never
  // parses.
  DebateOutcome Run(const Claim& claim) const;

  const DebateConfig& config() const { return config_; }

 private:
  Gateway& gateway_;
  DebateConfig config_;
  const TemplateStore& templates_;
};

inline DebateOutcome RunDebate(const Claim& claim, const DebateConfig& config,
                               Gateway& gateway) {
  return DebateEngine(gateway, config).Run(claim);
}

}  // namespace debatecheck

#endif  // DEBATECHECK_DEBATE_H_
