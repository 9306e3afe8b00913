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

#include "debatecheck/corpus.h"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <map>
#include <sstream>

#include "debatecheck/errors.h"

namespace debatecheck {

namespace fs = std::filesystem;
using Json = nlohmann::json;

namespace {

constexpr std::string_view kOutcomes = "outcomes";
constexpr std::string_view kSamples = "samples";

std::string IdText(const Json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number_integer()) return std::to_string(v.get<long long>());
  return v.dump();
}

std::string ReadFile(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw StoreIoError("cannot read " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::vector<EvidenceItem> GoldenEvidence(const Json& record) {
  std::vector<EvidenceItem> out;
  if (!record.contains("questions") || record.at("questions").is_null()) {
    return out;
  }
  for (const auto& q : record.at("questions")) {
    std::string question = q.value("question", "");
    if (!q.contains("answers") || q.at("answers").is_null()) continue;
    for (const auto& a : q.at("answers")) {
      EvidenceItem e;
      e.question = question;
      e.answer = a.contains("answer") && a.at("answer").is_string()
                     ? a.at("answer").get<std::string>()
                     : "";
      if (a.contains("boolean_explanation") &&
          a.at("boolean_explanation").is_string() &&
          !a.at("boolean_explanation").get<std::string>().empty()) {
        e.answer += ". " + a.at("boolean_explanation").get<std::string>();
      }
      if (a.contains("source_url") && a.at("source_url").is_string()) {
        e.source_url = a.at("source_url").get<std::string>();
      }
      out.push_back(std::move(e));
    }
  }
  return out;
}

}  // namespace

std::string_view ConditionName(EvidenceCondition c) {
  switch (c) {
    case EvidenceCondition::kGolden:
      return "golden";
    case EvidenceCondition::kRetrieved:
      return "retrieved";
    case EvidenceCondition::kNoEvidence:
      return "no-evidence";
  }
  return "";
}

EvidenceCondition ParseCondition(std::string_view name) {
  for (auto c : {EvidenceCondition::kGolden, EvidenceCondition::kRetrieved,
                 EvidenceCondition::kNoEvidence}) {
    if (ConditionName(c) == name) return c;
  }
  throw UsageError("unknown evidence condition: " + std::string(name) +
                   " (expected golden, retrieved or no-evidence)");
}

std::vector<std::pair<std::string, std::vector<EvidenceItem>>>
LoadRetrievedEvidence(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw MissingRetrievalFile("cannot open retrieval file: " + path.string());
  std::vector<std::pair<std::string, std::vector<EvidenceItem>>> out;
  std::string line;
  int lineno = 0;
  int position = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    try {
      Json j = Json::parse(line);
      std::string id = j.contains("claim_id") ? IdText(j.at("claim_id"))
                                              : std::to_string(position);
      std::vector<EvidenceItem> ev;
      for (const auto& e : j.at("evidence")) ev.push_back(DecodeEvidence(e));
      out.emplace_back(std::move(id), std::move(ev));
    } catch (const Json::exception& e) {
      throw CorpusParseError(path.string() + ":" + std::to_string(lineno) +
                             ": " + e.what());
    }
    ++position;
  }
  return out;
}

std::vector<Claim> LoadCorpus(const fs::path& path, EvidenceCondition condition,
                              const std::optional<fs::path>& retrieved_path) {
  if (condition == EvidenceCondition::kRetrieved && !retrieved_path) {
    throw MissingRetrievalFile("retrieved condition needs a retrieval file");
  }
  std::ifstream in(path);
  if (!in) throw CorpusParseError("cannot open corpus: " + path.string());
  Json doc;
  try {
    doc = Json::parse(in);
  } catch (const Json::exception& e) {
    throw CorpusParseError(path.string() + ": " + e.what());
  }
  if (!doc.is_array()) {
    throw CorpusParseError(path.string() + ": expected a JSON array");
  }

  std::vector<Claim> claims;
  claims.reserve(doc.size());
  std::set<std::string> seen;
  for (std::size_t i = 0; i < doc.size(); ++i) {
    const Json& rec = doc[i];
    if (!rec.is_object() || !rec.contains("claim") ||
        !rec.at("claim").is_string()) {
      throw CorpusParseError(path.string() + ": record " + std::to_string(i) +
                             " has no \"claim\" text");
    }
    Claim c;
    c.id = rec.contains("claim_id") ? IdText(rec.at("claim_id"))
                                    : std::to_string(i);
    if (!seen.insert(c.id).second) {
      throw CorpusParseError(path.string() + ": duplicate claim id " + c.id);
    }
    c.text = rec.at("claim").get<std::string>();
    if (rec.contains("label") && !rec.at("label").is_null()) {
      const std::string label = rec.at("label").get<std::string>();
      auto v = TryNormalizeVerdict(label);
      if (!v) {
        throw LabelParseError(path.string() + ": record " + std::to_string(i) +
                              " has unknown label \"" + label + "\"");
      }
      c.gold_verdict = *v;
    }
    if (condition == EvidenceCondition::kGolden) c.evidence = GoldenEvidence(rec);
    claims.push_back(std::move(c));
  }

  if (condition == EvidenceCondition::kRetrieved) {
    std::map<std::string, std::vector<EvidenceItem>> by_id;
    for (auto& [id, ev] : LoadRetrievedEvidence(*retrieved_path)) {
      by_id[id] = std::move(ev);
    }
    for (auto& c : claims) {
      auto it = by_id.find(c.id);
      if (it == by_id.end()) {
        throw CorpusParseError("retrieval file has no entry for claim " + c.id);
      }
      c.evidence = it->second;
    }
  }
  return claims;
}

std::string FileSafeId(std::string_view id) {
  static constexpr char kHex[] = "0123456789ABCDEF";
  std::string out;
  for (char ch : id) {
    auto c = static_cast<unsigned char>(ch);
    if (std::isalnum(c) || c == '-' || c == '_' || c == '.') {
      out += ch;
    } else {
      out += '%';
      out += kHex[c >> 4];
      out += kHex[c & 0xF];
    }
  }
  if (out.empty() || out == "." || out == "..") out = "%" + out;
  return out;
}

std::string UnescapeFileSafeId(std::string_view name) {
  std::string out;
  for (std::size_t i = 0; i < name.size(); ++i) {
    bool escape = name[i] == '%' && i + 2 < name.size() &&
                  std::isxdigit(static_cast<unsigned char>(name[i + 1])) &&
                  std::isxdigit(static_cast<unsigned char>(name[i + 2]));
    if (escape) {
      out += static_cast<char>(
          std::stoi(std::string(name.substr(i + 1, 2)), nullptr, 16));
      i += 2;
    } else if (name[i] != '%') {
      out += name[i];
    }
  }
  return out;
}

void AtomicWrite(const fs::path& path, std::string_view contents) {
  fs::path tmp = path;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw StoreIoError("cannot write " + tmp.string());
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    out.flush();
    if (!out) throw StoreIoError("short write to " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, path, ec);
  if (ec) throw StoreIoError("cannot rename " + tmp.string() + ": " + ec.message());
}

RunStore::RunStore(fs::path runs_root, std::string run_id)
    : dir_(std::move(runs_root) / run_id), run_id_(std::move(run_id)) {
  if (run_id_.empty() || run_id_.find('/') != std::string::npos) {
    throw UsageError("invalid run id: \"" + run_id_ + "\"");
  }
  std::error_code ec;
  fs::create_directories(dir_ / kOutcomes, ec);
  fs::create_directories(dir_ / kSamples, ec);
  if (ec) throw StoreIoError("cannot create run directory " + dir_.string());
  // Only records that decode count as persisted; a damaged file is redone.
  for (const auto& o : LoadOutcomes().records) outcome_ids_.insert(o.claim_id);
  for (const auto& s : LoadSamples().records) sample_ids_.insert(s.claim.id);
  std::lock_guard<std::mutex> lock(mu_);
  FlushIndexLocked();
}

bool RunStore::Exists(const fs::path& runs_root, const std::string& run_id) {
  return fs::is_directory(runs_root / run_id / kOutcomes);
}

fs::path RunStore::RecordPath(std::string_view kind,
                              const std::string& claim_id) const {
  return dir_ / kind / (FileSafeId(claim_id) + ".json");
}

void RunStore::WriteRecord(std::string_view kind, const std::string& claim_id,
                           const OrderedJson& body) {
  std::lock_guard<std::mutex> lock(mu_);
  AtomicWrite(RecordPath(kind, claim_id), body.dump(2) + "\n");
  (kind == kOutcomes ? outcome_ids_ : sample_ids_).insert(claim_id);
  FlushIndexLocked();
}

void RunStore::PersistOutcome(const DebateOutcome& outcome) {
  WriteRecord(kOutcomes, outcome.claim_id, EncodeOutcome(outcome));
}

void RunStore::PersistSample(const SynDecSample& sample) {
  WriteRecord(kSamples, sample.claim.id, EncodeSample(sample));
}

namespace {

template <typename T, typename Decode>
LoadResult<T> LoadAll(const fs::path& dir, Decode decode) {
  LoadResult<T> out;
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir)) {
    if (entry.path().extension() == ".json") files.push_back(entry.path());
  }
  std::sort(files.begin(), files.end(), [](const fs::path& a, const fs::path& b) {
    return UnescapeFileSafeId(a.stem().string()) <
           UnescapeFileSafeId(b.stem().string());
  });
  for (const auto& f : files) {
    try {
      out.records.push_back(decode(Json::parse(ReadFile(f))));
    } catch (const std::exception&) {
      out.corrupt.push_back(f.filename().string());
    }
  }
  return out;
}

}  // namespace

LoadResult<DebateOutcome> RunStore::LoadOutcomes() const {
  return LoadAll<DebateOutcome>(dir_ / kOutcomes,
                                [](const Json& j) { return DecodeOutcome(j); });
}

LoadResult<SynDecSample> RunStore::LoadSamples() const {
  return LoadAll<SynDecSample>(dir_ / kSamples,
                               [](const Json& j) { return DecodeSample(j); });
}

std::optional<DebateOutcome> RunStore::LoadOutcome(
    const std::string& claim_id) const {
  auto path = RecordPath(kOutcomes, claim_id);
  if (!fs::exists(path)) return std::nullopt;
  try {
    return DecodeOutcome(Json::parse(ReadFile(path)));
  } catch (const std::exception&) {
    return std::nullopt;
  }
}

std::set<std::string> RunStore::PersistedOutcomeIds() const {
  std::lock_guard<std::mutex> lock(mu_);
  return outcome_ids_;
}

std::set<std::string> RunStore::PersistedSampleIds() const {
  std::lock_guard<std::mutex> lock(mu_);
  return sample_ids_;
}

void RunStore::WriteFailures(const std::vector<FailureRecord>& failures) {
  std::string body;
  for (const auto& f : failures) {
    OrderedJson j;
    j["claim_id"] = f.claim_id;
    j["stage"] = f.stage;
    j["error"] = f.message;
    body += j.dump() + "\n";
  }
  std::lock_guard<std::mutex> lock(mu_);
  AtomicWrite(dir_ / "failures.jsonl", body);
}

void RunStore::WriteManifest(const OrderedJson& manifest) {
  std::lock_guard<std::mutex> lock(mu_);
  AtomicWrite(dir_ / "manifest.json", manifest.dump(2) + "\n");
}

std::optional<Json> RunStore::ReadManifest() const {
  auto path = dir_ / "manifest.json";
  if (!fs::exists(path)) return std::nullopt;
  return Json::parse(ReadFile(path));
}

void RunStore::FlushIndex() {
  std::lock_guard<std::mutex> lock(mu_);
  FlushIndexLocked();
}

void RunStore::FlushIndexLocked() {
  OrderedJson j;
  j["run_id"] = run_id_;
  j["outcomes"] = outcome_ids_;
  j["samples"] = sample_ids_;
  AtomicWrite(dir_ / "index.json", j.dump(2) + "\n");
}

}  // namespace debatecheck
