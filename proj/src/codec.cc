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

#include "debatecheck/codec.h"

namespace debatecheck {

using Json = nlohmann::json;

OrderedJson EncodeEvidence(const EvidenceItem& e) {
  OrderedJson j;
  j["question"] = e.question;
  j["answer"] = e.answer;
  j["url"] = e.source_url;
  return j;
}

EvidenceItem DecodeEvidence(const Json& j) {
  return {j.value("question", ""), j.value("answer", ""), j.value("url", "")};
}

OrderedJson EncodeClaim(const Claim& c) {
  OrderedJson j;
  j["id"] = c.id;
  j["text"] = c.text;
  j["gold_verdict"] = c.gold_verdict
                          ? OrderedJson(std::string(DisplayString(*c.gold_verdict)))
                          : OrderedJson(nullptr);
  auto& ev = j["evidence"] = OrderedJson::array();
  for (const auto& e : c.evidence) ev.push_back(EncodeEvidence(e));
  return j;
}

Claim DecodeClaim(const Json& j) {
  Claim c;
  c.id = j.at("id").get<std::string>();
  c.text = j.at("text").get<std::string>();
  if (j.contains("gold_verdict") && !j.at("gold_verdict").is_null()) {
    c.gold_verdict = NormalizeVerdict(j.at("gold_verdict").get<std::string>());
  }
  for (const auto& e : j.at("evidence")) c.evidence.push_back(DecodeEvidence(e));
  return c;
}

OrderedJson EncodeDecision(const ModeratorDecision& d) {
  OrderedJson j;
  j["primary_insight"] = d.primary_insight;
  j["evidence_gaps"] = d.evidence_gaps;
  j["proceeding_justification"] = d.proceeding_justification;
  j["proceeding"] = d.proceeding;
  j["verdict_justification"] = d.verdict_justification
                                   ? OrderedJson(*d.verdict_justification)
                                   : OrderedJson(nullptr);
  j["verdict"] = d.verdict ? OrderedJson(std::string(DisplayString(*d.verdict)))
                           : OrderedJson(nullptr);
  return j;
}

ModeratorDecision DecodeDecision(const Json& j) {
  ModeratorDecision d;
  d.primary_insight = j.at("primary_insight").get<std::string>();
  d.evidence_gaps = j.at("evidence_gaps").get<std::string>();
  d.proceeding_justification = j.at("proceeding_justification").get<std::string>();
  d.proceeding = j.at("proceeding").get<bool>();
  if (!j.at("verdict_justification").is_null()) {
    d.verdict_justification = j.at("verdict_justification").get<std::string>();
  }
  if (!j.at("verdict").is_null()) {
    d.verdict = NormalizeVerdict(j.at("verdict").get<std::string>());
  }
  return d;
}

OrderedJson EncodeOutcome(const DebateOutcome& o) {
  OrderedJson j;
  j["claim_id"] = o.claim_id;
  j["rounds_used"] = o.rounds_used;
  j["predicted_verdict"] = std::string(DisplayString(o.predicted_verdict));
  j["predicted_justification"] = o.predicted_justification;
  j["forced_final"] = o.forced_final;
  j["model_calls"] = o.model_calls;
  auto& rec = j["recording"] = OrderedJson::array();
  for (const auto& t : o.recording) {
    OrderedJson tj;
    tj["role"] = std::string(RoleName(t.role));
    tj["round"] = t.round;
    tj["prompt_id"] = std::string(TemplateName(t.prompt_id));
    tj["content"] = t.content;
    rec.push_back(std::move(tj));
  }
  auto& dec = j["decisions"] = OrderedJson::array();
  for (const auto& d : o.decisions) {
    dec.push_back(d ? EncodeDecision(*d) : OrderedJson(nullptr));
  }
  auto& usage = j["token_usage"] = OrderedJson::object();
  for (const auto& [role, tc] : o.token_usage) {
    OrderedJson u;
    u["model"] = tc.model;
    u["input_tokens"] = tc.input_tokens;
    u["output_tokens"] = tc.output_tokens;
    u["estimated"] = tc.estimated;
    usage[role] = std::move(u);
  }
  return j;
}

DebateOutcome DecodeOutcome(const Json& j) {
  DebateOutcome o;
  o.claim_id = j.at("claim_id").get<std::string>();
  o.rounds_used = j.at("rounds_used").get<int>();
  o.predicted_verdict =
      NormalizeVerdict(j.at("predicted_verdict").get<std::string>());
  o.predicted_justification = j.at("predicted_justification").get<std::string>();
  o.forced_final = j.at("forced_final").get<bool>();
  o.model_calls = j.value("model_calls", 0);
  for (const auto& tj : j.at("recording")) {
    DebateTurn t;
    t.role = ParseRole(tj.at("role").get<std::string>());
    t.round = tj.at("round").get<int>();
    t.prompt_id = ParseTemplateId(tj.at("prompt_id").get<std::string>());
    t.content = tj.at("content").get<std::string>();
    o.recording.push_back(std::move(t));
  }
  for (const auto& dj : j.at("decisions")) {
    o.decisions.push_back(dj.is_null() ? std::nullopt
                                       : std::optional(DecodeDecision(dj)));
  }
  if (j.contains("token_usage")) {
    for (const auto& [role, u] : j.at("token_usage").items()) {
      TokenCount tc;
      tc.model = u.at("model").get<std::string>();
      tc.input_tokens = u.at("input_tokens").get<std::int64_t>();
      tc.output_tokens = u.at("output_tokens").get<std::int64_t>();
      tc.estimated = u.value("estimated", false);
      o.token_usage[role] = tc;
    }
  }
  return o;
}

OrderedJson EncodeSample(const SynDecSample& s) {
  OrderedJson j;
  j["claim"] = EncodeClaim(s.claim);
  j["outcome"] = EncodeOutcome(s.outcome);
  j["corrected_justification"] = s.corrected_justification
                                     ? OrderedJson(*s.corrected_justification)
                                     : OrderedJson(nullptr);
  return j;
}

SynDecSample DecodeSample(const Json& j) {
  SynDecSample s;
  s.claim = DecodeClaim(j.at("claim"));
  s.outcome = DecodeOutcome(j.at("outcome"));
  if (j.contains("corrected_justification") &&
      !j.at("corrected_justification").is_null()) {
    s.corrected_justification =
        j.at("corrected_justification").get<std::string>();
  }
  return s;
}

OrderedJson EncodeMessage(const ChatMessage& m) {
  OrderedJson j;
  j["role"] = m.role;
  j["content"] = m.content;
  return j;
}

ChatMessage DecodeMessage(const Json& j) {
  return {j.at("role").get<std::string>(), j.at("content").get<std::string>()};
}

OrderedJson EncodePair(const PreferencePair& p) {
  OrderedJson j;
  auto& prompt = j["prompt"] = OrderedJson::array();
  for (const auto& m : p.prompt) prompt.push_back(EncodeMessage(m));
  j["chosen"] = EncodeMessage(p.chosen);
  j["rejected"] = EncodeMessage(p.rejected);
  return j;
}

PreferencePair DecodePair(const Json& j) {
  PreferencePair p;
  for (const auto& m : j.at("prompt")) p.prompt.push_back(DecodeMessage(m));
  p.chosen = DecodeMessage(j.at("chosen"));
  p.rejected = DecodeMessage(j.at("rejected"));
  return p;
}

}  // namespace debatecheck
