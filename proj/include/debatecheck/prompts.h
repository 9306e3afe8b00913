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

// The eight agent prompt templates and their placeholder rendering.
//
// Templates are UTF-8 text assets, one file per TemplateId. Placeholders are
// written as [NAME] where NAME is one of kPlaceholderNames; any other bracketed
// text is literal.

#ifndef DEBATECHECK_PROMPTS_H_
#define DEBATECHECK_PROMPTS_H_

#include <array>
#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "debatecheck/model.h"

namespace debatecheck {

using Bindings = std::map<std::string, std::string>;

inline constexpr std::array<std::string_view, 9> kPlaceholderNames = {
    "CLAIM",
    "EVIDENCE_SET",
    "ROUND_NUMBER",
    "AFFIRMATIVE_ARGUMENT",
    "NEGATIVE_ARGUMENT",
    "OPPOSITION_ARGUMENT",
    "DEBATE_RECORDING",
    "Primary_Insights",
    "GT_VERDICT",
};

inline constexpr char kNoEvidenceSentinel[] = "No evidence provided.";

// Asset file name for a template, e.g. "moderator_round.txt".
std::string_view TemplateFileName(TemplateId id);

std::string Sha256Hex(std::string_view data);

class TemplateStore {
 public:
  // Copy compiled into the library from assets/templates.
  static const TemplateStore& Builtin();
  // Reads every template file from `dir`; a single trailing newline per file
  // is dropped. Throws UnknownTemplate when a file is missing.
  static TemplateStore LoadDirectory(const std::filesystem::path& dir);

  std::string_view Text(TemplateId id) const;
  std::string Checksum(TemplateId id) const;
  std::set<std::string> RequiredPlaceholders(TemplateId id) const;

  // Substitutes every placeholder in one left-to-right pass. Throws
  // MissingBinding naming the first unbound placeholder.
  std::string Render(TemplateId id, const Bindings& bindings) const;

 private:
  std::array<std::string, kAllTemplates.size()> texts_;
};

// Shorthands over TemplateStore::Builtin().
std::set<std::string> RequiredPlaceholders(TemplateId id);
std::string Render(TemplateId id, const Bindings& bindings);

// "1. Q: <question> A: <answer> (<url>)" per item, newline separated; the
// parenthesised URL is omitted when empty. An empty list renders
// kNoEvidenceSentinel.
std::string RenderEvidenceSet(const std::vector<EvidenceItem>& evidence);

}  // namespace debatecheck

#endif  // DEBATECHECK_PROMPTS_H_
