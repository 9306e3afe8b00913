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

// Corpus ingestion under the three evidence conditions, and the on-disk run
// store that makes long runs resumable.

#ifndef DEBATECHECK_CORPUS_H_
#define DEBATECHECK_CORPUS_H_

#include <filesystem>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "debatecheck/codec.h"
#include "debatecheck/model.h"

namespace debatecheck {

enum class EvidenceCondition { kGolden, kRetrieved, kNoEvidence };

// "golden", "retrieved", "no-evidence".
std::string_view ConditionName(EvidenceCondition c);
// Throws UsageError.
EvidenceCondition ParseCondition(std::string_view name);

// Reads a corpus in the public AVeriTeC layout: a JSON array of records with
// "claim", "label" and "questions": [{"question", "answers": [{"answer",
// "source_url", "boolean_explanation"?}]}]. Every answer becomes one
// EvidenceItem. Records without "claim_id" take their array position as id.
//
// Retrieved substitutes evidence from `retrieved_path` (JSON lines of
// {"claim_id", "evidence": [{"question", "answer", "url"}]}, joined by id or,
// when claim_id is absent, by line position). NoEvidence clears evidence.
//
// Throws CorpusParseError, MissingRetrievalFile, LabelParseError.
std::vector<Claim> LoadCorpus(
    const std::filesystem::path& path, EvidenceCondition condition,
    const std::optional<std::filesystem::path>& retrieved_path = std::nullopt);

// Retrieved-evidence file as a map claim_id -> evidence list.
std::vector<std::pair<std::string, std::vector<EvidenceItem>>>
LoadRetrievedEvidence(const std::filesystem::path& path);

struct FailureRecord {
  std::string claim_id;
  std::string stage;
  std::string message;
};

template <typename T>
struct LoadResult {
  std::vector<T> records;  // ordered by claim id
  std::vector<std::string> corrupt;  // file names that failed to decode
};

// runs/<run_id>/{manifest.json, index.json, outcomes/<id>.json,
// samples/<id>.json}. Each record is written to a temp file and renamed, so a
// crash leaves either the old state or the new record, never a torn file.
// Writes are serialized; reads may run concurrently with each other.
class RunStore {
 public:
  // Creates the directory tree when missing. The index is rebuilt from the
  // files on disk.
  RunStore(std::filesystem::path runs_root, std::string run_id);

  static bool Exists(const std::filesystem::path& runs_root,
                     const std::string& run_id);

  const std::filesystem::path& dir() const { return dir_; }
  const std::string& run_id() const { return run_id_; }

  void PersistOutcome(const DebateOutcome& outcome);
  LoadResult<DebateOutcome> LoadOutcomes() const;
  std::set<std::string> PersistedOutcomeIds() const;
  std::optional<DebateOutcome> LoadOutcome(const std::string& claim_id) const;

  void PersistSample(const SynDecSample& sample);
  LoadResult<SynDecSample> LoadSamples() const;
  std::set<std::string> PersistedSampleIds() const;

  // Rewrites failures.jsonl, one JSON object per line.
  void WriteFailures(const std::vector<FailureRecord>& failures);

  void WriteManifest(const OrderedJson& manifest);
  std::optional<nlohmann::json> ReadManifest() const;

  // Rewrites index.json from the in-memory index.
  void FlushIndex();

 private:
  std::filesystem::path RecordPath(std::string_view kind,
                                   const std::string& claim_id) const;
  void WriteRecord(std::string_view kind, const std::string& claim_id,
                   const OrderedJson& body);
  void FlushIndexLocked();

  std::filesystem::path dir_;
  std::string run_id_;
  mutable std::mutex mu_;
  std::set<std::string> outcome_ids_;
  std::set<std::string> sample_ids_;
};

// Escapes characters that are unsafe in file names ('%XX').
std::string FileSafeId(std::string_view id);
std::string UnescapeFileSafeId(std::string_view name);

// Writes `contents` to `path` through a temp file + rename.
void AtomicWrite(const std::filesystem::path& path, std::string_view contents);

}  // namespace debatecheck

#endif  // DEBATECHECK_CORPUS_H_
