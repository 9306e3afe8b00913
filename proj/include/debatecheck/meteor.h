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

// METEOR sentence similarity with exact and stem matching stages, and the
// set-level evidence score built on it.
//
// Alignment: every exact (identical token) match that can be made is made;
// then every stem match among the remaining tokens. Among alignments with
// those match counts, the one with the fewest chunks is chosen. A chunk is a
// maximal run of matches that are contiguous in both candidate and reference.
//
//   P = m / |candidate|, R = m / |reference|
//   Fmean = 10PR / (R + 9P)
//   penalty = 0.5 * (chunks / m)^3
//   score = Fmean * (1 - penalty), or 0 when m = 0.

#ifndef DEBATECHECK_METEOR_H_
#define DEBATECHECK_METEOR_H_

#include <string>
#include <string_view>
#include <vector>

#include "debatecheck/model.h"

namespace debatecheck {

// Lower-cases, splits on whitespace and strips ASCII punctuation from both
// ends of each token. Tokens that become empty are dropped.
std::vector<std::string> MeteorTokenize(std::string_view text);

struct MeteorStats {
  int candidate_length = 0;
  int reference_length = 0;
  int exact_matches = 0;
  int stem_matches = 0;
  int matches = 0;
  int chunks = 0;
  double precision = 0;
  double recall = 0;
  double fmean = 0;
  double penalty = 0;
  double score = 0;
  // False when the chunk search hit its node limit and fell back to the best
  // alignment found so far.
  bool exhaustive = true;
};

MeteorStats MeteorDetailed(const std::vector<std::string>& candidate,
                           const std::vector<std::string>& reference);

double Meteor(std::string_view candidate, std::string_view reference);

// Best one-to-one assignment of predicted to gold items by pairwise METEOR on
// "question answer" strings, summed and divided by |gold|. Throws EmptyGold.
double EvidenceScore(const std::vector<EvidenceItem>& predicted,
                     const std::vector<EvidenceItem>& gold);

}  // namespace debatecheck

#endif  // DEBATECHECK_METEOR_H_
