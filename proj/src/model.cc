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

#include "debatecheck/model.h"

#include <cctype>
#include <string>

#include "debatecheck/errors.h"

namespace debatecheck {
namespace {

// Lower-cases, turns '/', '-' and '_' into spaces, collapses whitespace runs
// and drops surrounding quotes and a trailing full stop.
std::string FoldLabel(std::string_view raw) {
  std::string out;
  bool pending_space = false;
  for (char c : raw) {
    auto uc = static_cast<unsigned char>(c);
    if (std::isspace(uc) || c == '/' || c == '-' || c == '_') {
      pending_space = !out.empty();
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(static_cast<char>(std::tolower(uc)));
  }
  auto strip = [](char c) { return c == '"' || c == '\'' || c == '.'; };
  while (!out.empty() && strip(out.back())) out.pop_back();
  std::size_t start = 0;
  while (start < out.size() && strip(out[start])) ++start;
  out.erase(0, start);
  while (!out.empty() && out.back() == ' ') out.pop_back();
  while (!out.empty() && out.front() == ' ') out.erase(0, 1);
  return out;
}

}  // namespace

std::string_view DisplayString(Verdict v) {
  switch (v) {
    case Verdict::kSupported:
      return "Supported";
    case Verdict::kRefuted:
      return "Refuted";
    case Verdict::kNotEnoughEvidence:
      return "Not Enough Evidence";
    case Verdict::kConflictingEvidenceCherryPicking:
      return "Conflicting Evidence/Cherry-picking";
  }
  return "";
}

std::optional<Verdict> TryNormalizeVerdict(std::string_view raw) {
  const std::string folded = FoldLabel(raw);
  if (folded == "supported") return Verdict::kSupported;
  if (folded == "refuted") return Verdict::kRefuted;
  if (folded == "not enough evidence") return Verdict::kNotEnoughEvidence;
  if (folded == "conflicting evidence cherry picking" ||
      folded == "conflicting evidence cherrypicking") {
    return Verdict::kConflictingEvidenceCherryPicking;
  }
  return std::nullopt;
}

Verdict NormalizeVerdict(std::string_view raw) {
  if (auto v = TryNormalizeVerdict(raw)) return *v;
  throw UnknownVerdict("unknown verdict label: \"" + std::string(raw) + "\"");
}

std::string_view RoleName(Role r) {
  switch (r) {
    case Role::kAffirmative:
      return "Affirmative";
    case Role::kNegative:
      return "Negative";
    case Role::kModerator:
      return "Moderator";
    case Role::kCorrector:
      return "Corrector";
  }
  return "";
}

Role ParseRole(std::string_view name) {
  for (Role r : {Role::kAffirmative, Role::kNegative, Role::kModerator,
                 Role::kCorrector}) {
    if (RoleName(r) == name) return r;
  }
  throw Error("unknown role: " + std::string(name));
}

std::string_view TemplateName(TemplateId id) {
  switch (id) {
    case TemplateId::kDebaterMeta:
      return "DebaterMeta";
    case TemplateId::kModeratorMeta:
      return "ModeratorMeta";
    case TemplateId::kAffirmativeOpen:
      return "AffirmativeOpen";
    case TemplateId::kNegativeRebuttal:
      return "NegativeRebuttal";
    case TemplateId::kInteraction:
      return "Interaction";
    case TemplateId::kModeratorRound:
      return "ModeratorRound";
    case TemplateId::kModeratorFinal:
      return "ModeratorFinal";
    case TemplateId::kCorrector:
      return "Corrector";
  }
  return "";
}

TemplateId ParseTemplateId(std::string_view name) {
  for (TemplateId id : kAllTemplates) {
    if (TemplateName(id) == name) return id;
  }
  throw UnknownTemplate("unknown template: " + std::string(name));
}

}  // namespace debatecheck
