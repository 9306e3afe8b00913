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

#include "debatecheck/prompts.h"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <optional>
#include <sstream>

#include "debatecheck/errors.h"

namespace debatecheck {

// Defined in the generated embedded_templates.cc, indexed like kAllTemplates.
extern const std::array<std::string_view, 8> kEmbeddedTemplates;

namespace {

std::size_t Index(TemplateId id) { return static_cast<std::size_t>(id); }

// If a known placeholder starts at text[pos] ('['), returns its name.
std::optional<std::string_view> PlaceholderAt(std::string_view text,
                                              std::size_t pos) {
  if (text[pos] != '[') return std::nullopt;
  auto close = text.find(']', pos + 1);
  if (close == std::string_view::npos) return std::nullopt;
  std::string_view inner = text.substr(pos + 1, close - pos - 1);
  for (std::string_view name : kPlaceholderNames) {
    if (inner == name) return name;
  }
  return std::nullopt;
}

}  // namespace

std::string_view TemplateFileName(TemplateId id) {
  switch (id) {
    case TemplateId::kDebaterMeta:
      return "debater_meta.txt";
    case TemplateId::kModeratorMeta:
      return "moderator_meta.txt";
    case TemplateId::kAffirmativeOpen:
      return "affirmative_open.txt";
    case TemplateId::kNegativeRebuttal:
      return "negative_rebuttal.txt";
    case TemplateId::kInteraction:
      return "interaction.txt";
    case TemplateId::kModeratorRound:
      return "moderator_round.txt";
    case TemplateId::kModeratorFinal:
      return "moderator_final.txt";
    case TemplateId::kCorrector:
      return "corrector.txt";
  }
  throw UnknownTemplate("unknown template id");
}

std::string Sha256Hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr);
  std::string hex;
  hex.reserve(len * 2);
  char buf[3];
  for (unsigned int i = 0; i < len; ++i) {
    std::snprintf(buf, sizeof(buf), "%02x", digest[i]);
    hex += buf;
  }
  return hex;
}

const TemplateStore& TemplateStore::Builtin() {
  static const TemplateStore store = [] {
    TemplateStore s;
    for (TemplateId id : kAllTemplates) {
      s.texts_[Index(id)] = std::string(kEmbeddedTemplates[Index(id)]);
    }
    return s;
  }();
  return store;
}

TemplateStore TemplateStore::LoadDirectory(const std::filesystem::path& dir) {
  TemplateStore s;
  for (TemplateId id : kAllTemplates) {
    auto path = dir / TemplateFileName(id);
    std::ifstream in(path, std::ios::binary);
    if (!in) {
      throw UnknownTemplate("template asset missing: " + path.string());
    }
    std::ostringstream os;
    os << in.rdbuf();
    std::string text = os.str();
    if (!text.empty() && text.back() == '\n') text.pop_back();
    s.texts_[Index(id)] = std::move(text);
  }
  return s;
}

std::string_view TemplateStore::Text(TemplateId id) const {
  return texts_.at(Index(id));
}

std::string TemplateStore::Checksum(TemplateId id) const {
  return Sha256Hex(Text(id));
}

std::set<std::string> TemplateStore::RequiredPlaceholders(TemplateId id) const {
  std::set<std::string> names;
  std::string_view text = Text(id);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (auto name = PlaceholderAt(text, i)) names.emplace(*name);
  }
  return names;
}

std::string TemplateStore::Render(TemplateId id,
                                  const Bindings& bindings) const {
  std::string_view text = Text(id);
  std::string out;
  out.reserve(text.size());
  for (std::size_t i = 0; i < text.size();) {
    if (auto name = PlaceholderAt(text, i)) {
      auto it = bindings.find(std::string(*name));
      if (it == bindings.end()) throw MissingBinding(std::string(*name));
      out += it->second;
      i += name->size() + 2;
    } else {
      out += text[i];
      ++i;
    }
  }
  return out;
}

std::set<std::string> RequiredPlaceholders(TemplateId id) {
  return TemplateStore::Builtin().RequiredPlaceholders(id);
}

std::string Render(TemplateId id, const Bindings& bindings) {
  return TemplateStore::Builtin().Render(id, bindings);
}

std::string RenderEvidenceSet(const std::vector<EvidenceItem>& evidence) {
  if (evidence.empty()) return kNoEvidenceSentinel;
  std::string out;
  for (std::size_t i = 0; i < evidence.size(); ++i) {
    const auto& e = evidence[i];
    if (i > 0) out += '\n';
    out += std::to_string(i + 1) + ". Q: " + e.question + " A: " + e.answer;
    if (!e.source_url.empty()) out += " (" + e.source_url + ")";
  }
  return out;
}

}  // namespace debatecheck
