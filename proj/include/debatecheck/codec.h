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

// JSON encoding of the domain types, used by the run store and the exports.
// Field order is fixed so that encoding is byte-stable.

#ifndef DEBATECHECK_CODEC_H_
#define DEBATECHECK_CODEC_H_

#include <json.hpp>

#include "debatecheck/model.h"

namespace debatecheck {

using OrderedJson = nlohmann::ordered_json;

OrderedJson EncodeEvidence(const EvidenceItem& e);
EvidenceItem DecodeEvidence(const nlohmann::json& j);

OrderedJson EncodeClaim(const Claim& c);
Claim DecodeClaim(const nlohmann::json& j);

OrderedJson EncodeDecision(const ModeratorDecision& d);
ModeratorDecision DecodeDecision(const nlohmann::json& j);

OrderedJson EncodeOutcome(const DebateOutcome& o);
DebateOutcome DecodeOutcome(const nlohmann::json& j);

OrderedJson EncodeSample(const SynDecSample& s);
SynDecSample DecodeSample(const nlohmann::json& j);

OrderedJson EncodeMessage(const ChatMessage& m);
ChatMessage DecodeMessage(const nlohmann::json& j);

OrderedJson EncodePair(const PreferencePair& p);
PreferencePair DecodePair(const nlohmann::json& j);

}  // namespace debatecheck

#endif  // DEBATECHECK_CODEC_H_
