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

#include "debatecheck/debate.h"

#include <cctype>
#include <sstream>

#include <json.hpp>

#include "debatecheck/errors.h"

namespace debatecheck {
namespace {

using Json = nlohmann::json;

constexpr char kPrimaryInsight[] = "Primary Insight";
constexpr char kEvidenceGaps[] = "Evidence Gaps";
constexpr char kProceedingJustification[] = "Justification for Proceeding";
constexpr char kProceedingNecessity[] = "Proceeding Necessity";
constexpr char kVerdictJustification[] = "Justification for Verdict";
constexpr char kVerdict[] = "Verdict";

Json ParseObjectOrThrow(std::string_view raw) {
  auto text = ExtractFirstJsonObject(raw);
  if (!text) throw MalformedDecision("no JSON object in moderator reply");
  return Json::parse(*text);
}

std::string FieldText(const Json& obj, const char* key) {
  if (!obj.contains(key) || obj.at(key).is_null()) return "";
  const Json& v = obj.at(key);
  return v.is_string() ? v.get<std::string>() : v.dump();
}

std::string Trimmed(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return std::string(s.substr(b, e - b));
}

std::optional<bool> ParseYesNo(const Json& v) {
  if (v.is_boolean()) return v.get<bool>();
  if (!v.is_string()) return std::nullopt;
  std::string s;
  for (char c : Trimmed(v.get<std::string>())) {
    s += static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  }
  while (!s.empty() && (s.back() == '.' || s.back() == '!')) s.pop_back();
  if (s == "yes") return true;
  if (s == "no") return false;
  return std::nullopt;
}

std::optional<Verdict> VerdictField(const Json& obj) {
  if (!obj.contains(kVerdict) || !obj.at(kVerdict).is_string()) {
    return std::nullopt;
  }
  return TryNormalizeVerdict(obj.at(kVerdict).get<std::string>());
}

std::string OrPlaceholder(std::string text) {
  if (Trimmed(text).empty()) return kNoArgumentPlaceholder;
  return text;
}

void AddUsage(TokenUsage& usage, Role role, const std::string& model,
              const ChatResponse& r) {
  auto& slot = usage[std::string(RoleName(role))];
  slot.model = model;
  slot.input_tokens += r.input_tokens;
  slot.output_tokens += r.output_tokens;
  slot.estimated = slot.estimated || r.estimated;
}

}  // namespace

std::optional<std::string> ExtractFirstJsonObject(std::string_view raw) {
  for (std::size_t start = raw.find('{'); start != std::string_view::npos;
       start = raw.find('{', start + 1)) {
    int depth = 0;
    bool in_string = false;
    bool escaped = false;
    for (std::size_t i = start; i < raw.size(); ++i) {
      char c = raw[i];
      if (in_string) {
        if (escaped) {
          escaped = false;
        } else if (c == '\\') {
          escaped = true;
        } else if (c == '"') {
          in_string = false;
        }
        continue;
      }
      if (c == '"') {
        in_string = true;
      } else if (c == '{') {
        ++depth;
      } else if (c == '}' && --depth == 0) {
        std::string candidate(raw.substr(start, i - start + 1));
        auto parsed = Json::parse(candidate, nullptr, /*allow_exceptions=*/false);
        if (!parsed.is_discarded() && parsed.is_object()) return candidate;
        break;
      }
    }
  }
  return std::nullopt;
}

ModeratorDecision ParseModeratorDecision(std::string_view raw) {
  if (Trimmed(raw).empty()) throw MalformedDecision("empty moderator reply");
  Json obj = ParseObjectOrThrow(raw);
  if (!obj.contains(kProceedingNecessity)) {
    throw MalformedDecision("missing \"Proceeding Necessity\"");
  }
  auto proceed = ParseYesNo(obj.at(kProceedingNecessity));
  if (!proceed) {
    throw MalformedDecision("\"Proceeding Necessity\" is not Yes or No: " +
                            obj.at(kProceedingNecessity).dump());
  }
  ModeratorDecision d;
  d.primary_insight = FieldText(obj, kPrimaryInsight);
  d.evidence_gaps = FieldText(obj, kEvidenceGaps);
  d.proceeding_justification = FieldText(obj, kProceedingJustification);
  d.proceeding = *proceed;
  if (!d.proceeding) {
    d.verdict = VerdictField(obj);
    if (!d.verdict) {
      throw MalformedDecision(
          "\"Proceeding Necessity\" is No but \"Verdict\" is not a valid "
          "label");
    }
    d.verdict_justification = FieldText(obj, kVerdictJustification);
  }
  return d;
}

ModeratorDecision ParseFinalVerdict(std::string_view raw) {
  if (Trimmed(raw).empty()) throw MalformedDecision("empty moderator reply");
  Json obj = ParseObjectOrThrow(raw);
  ModeratorDecision d;
  d.proceeding = false;
  d.verdict = VerdictField(obj);
  if (!d.verdict) {
    throw MalformedDecision("final reply has no valid \"Verdict\"");
  }
  d.verdict_justification = FieldText(obj, kVerdictJustification);
  d.primary_insight = FieldText(obj, kPrimaryInsight);
  return d;
}

std::string RenderDecisionJson(const ModeratorDecision& d) {
  nlohmann::ordered_json j;
  j[kPrimaryInsight] = d.primary_insight;
  j[kEvidenceGaps] = d.evidence_gaps;
  j[kProceedingJustification] = d.proceeding_justification;
  j[kProceedingNecessity] = d.proceeding ? "Yes" : "No";
  j[kVerdictJustification] = d.verdict_justification.value_or("");
  j[kVerdict] = d.verdict ? std::string(DisplayString(*d.verdict)) : "";
  return j.dump();
}

std::string RenderFinalVerdictJson(Verdict verdict,
                                   std::string_view justification) {
  nlohmann::ordered_json j;
  j[kVerdictJustification] = std::string(justification);
  j[kVerdict] = std::string(DisplayString(verdict));
  return j.dump();
}

Continuation DecideContinuation(const ModeratorDecision& decision, int round,
                                const DebateConfig& config) {
  if (!decision.proceeding && decision.verdict) {
    return Finalize{*decision.verdict};
  }
  if (round >= config.max_rounds) return ForceFinal{};
  return Continue{};
}

std::string SerializeRecording(const std::vector<DebateTurn>& recording) {
  std::ostringstream os;
  for (std::size_t i = 0; i < recording.size(); ++i) {
    const auto& t = recording[i];
    if (i > 0) os << "\n\n";
    os << "Round " << t.round << " - " << RoleName(t.role) << ": "
       << t.content;
  }
  return os.str();
}

DebateEngine::DebateEngine(Gateway& gateway, DebateConfig config,
                           const TemplateStore& templates)
    : gateway_(gateway), config_(std::move(config)), templates_(templates) {
  if (config_.max_rounds < 1) throw UsageError("max_rounds must be >= 1");
  if (config_.moderator_parse_retries < 0) {
    throw UsageError("moderator_parse_retries must be >= 0");
  }
}

DebateOutcome DebateEngine::Run(const Claim& claim) const {
  if (Trimmed(claim.text).empty()) throw Error("claim text is empty");

  DebateOutcome out;
  out.claim_id = claim.id;

  const std::string evidence = RenderEvidenceSet(claim.evidence);
  const Bindings setup = {{"CLAIM", claim.text}, {"EVIDENCE_SET", evidence}};
  const std::string debater_meta =
      templates_.Render(TemplateId::kDebaterMeta, setup);
  std::vector<ChatMessage> aff_history = {{"system", debater_meta}};
  std::vector<ChatMessage> neg_history = {{"system", debater_meta}};
  std::vector<ChatMessage> mod_history = {
      {"system", templates_.Render(TemplateId::kModeratorMeta, setup)}};

  auto call = [&](Role role, int round, TemplateId tmpl,
                  std::vector<ChatMessage> messages) {
    ChatRequest req;
    req.model_id = role == Role::kModerator ? config_.moderator_model
                                            : config_.debater_model;
    req.messages = std::move(messages);
    req.params = config_.params;
    req.route = {claim.id, role, round, tmpl};
    int attempts = 0;
    try {
      ChatResponse r = gateway_.Complete(req, &attempts);
      out.model_calls += attempts;
      AddUsage(out.token_usage, role, req.model_id, r);
      return r.content;
    } catch (...) {
      out.model_calls += attempts;
      throw;
    }
  };

  auto debater_turn = [&](Role role, int round, TemplateId tmpl,
                          const std::string& prompt,
                          std::vector<ChatMessage>& history) {
    history.push_back({"user", prompt});
    std::string reply = OrPlaceholder(call(role, round, tmpl, history));
    history.push_back({"assistant", reply});
    out.recording.push_back({role, round, tmpl, reply});
    return reply;
  };

  // Sends a Moderator prompt, re-prompting with a JSON reminder on parse
  // failure. Records exactly one turn for the slot.
  auto moderator_turn = [&](int round, TemplateId tmpl,
                            const std::string& prompt, auto parse)
      -> std::optional<ModeratorDecision> {
    std::string reply;
    std::optional<ModeratorDecision> decision;
    for (int attempt = 0; attempt <= config_.moderator_parse_retries;
         ++attempt) {
      auto messages = mod_history;
      messages.push_back(
          {"user", attempt == 0 ? prompt : prompt + "\n\n" + kJsonReminder});
      reply = call(Role::kModerator, round, tmpl, std::move(messages));
      try {
        decision = parse(reply);
        break;
      } catch (const MalformedDecision&) {
      }
    }
    mod_history.push_back({"user", prompt});
    mod_history.push_back({"assistant", reply});
    out.recording.push_back({Role::kModerator, round, tmpl, reply});
    out.decisions.push_back(decision);
    return decision;
  };

  std::string aff_arg;
  std::string neg_arg;
  for (int round = 1; round <= config_.max_rounds; ++round) {
    out.rounds_used = round;
    if (round == 1) {
      aff_arg = debater_turn(Role::kAffirmative, round,
                             TemplateId::kAffirmativeOpen,
                             templates_.Render(TemplateId::kAffirmativeOpen,
                                               {{"CLAIM", claim.text}}),
                             aff_history);
      neg_arg = debater_turn(
          Role::kNegative, round, TemplateId::kNegativeRebuttal,
          templates_.Render(TemplateId::kNegativeRebuttal,
                            {{"AFFIRMATIVE_ARGUMENT", aff_arg}}),
          neg_history);
    } else {
      aff_arg = debater_turn(
          Role::kAffirmative, round, TemplateId::kInteraction,
          templates_.Render(TemplateId::kInteraction,
                            {{"OPPOSITION_ARGUMENT", neg_arg}}),
          aff_history);
      neg_arg = debater_turn(
          Role::kNegative, round, TemplateId::kInteraction,
          templates_.Render(TemplateId::kInteraction,
                            {{"OPPOSITION_ARGUMENT", aff_arg}}),
          neg_history);
    }

    const std::string round_prompt = templates_.Render(
        TemplateId::kModeratorRound,
        {{"ROUND_NUMBER", std::to_string(round)},
         {"AFFIRMATIVE_ARGUMENT", aff_arg},
         {"NEGATIVE_ARGUMENT", neg_arg}});
    auto decision = moderator_turn(
        round, TemplateId::kModeratorRound, round_prompt,
        [](const std::string& r) { return ParseModeratorDecision(r); });

    // An unparseable round reply counts as "proceed".
    ModeratorDecision effective;
    effective.proceeding = true;
    if (decision) effective = *decision;

    Continuation next = DecideContinuation(effective, round, config_);
    if (auto* fin = std::get_if<Finalize>(&next)) {
      out.predicted_verdict = fin->verdict;
      out.predicted_justification = effective.verdict_justification.value_or("");
      out.forced_final = false;
      return out;
    }
    if (std::holds_alternative<ForceFinal>(next)) break;
  }

  const std::string final_prompt = templates_.Render(
      TemplateId::kModeratorFinal, {{"AFFIRMATIVE_ARGUMENT", aff_arg},
                                    {"NEGATIVE_ARGUMENT", neg_arg},
                                    {"CLAIM", claim.text}});
  auto final_decision = moderator_turn(
      out.rounds_used, TemplateId::kModeratorFinal, final_prompt,
      [](const std::string& r) { return ParseFinalVerdict(r); });
  if (!final_decision) {
    throw UndecidableDebate("claim " + claim.id +
                            ": final moderator reply never parsed");
  }
  out.predicted_verdict = *final_decision->verdict;
  out.predicted_justification =
      final_decision->verdict_justification.value_or("");
  out.forced_final = true;
  return out;
}

}  // namespace debatecheck
