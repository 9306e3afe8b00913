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

#include "debatecheck/metrics.h"

#include "debatecheck/errors.h"

namespace debatecheck {

double Accuracy(std::span<const EvalItem> items) {
  if (items.empty()) throw EmptyInput("accuracy of an empty item set");
  std::size_t hits = 0;
  for (const auto& it : items) hits += it.predicted == it.gold;
  return static_cast<double>(hits) / static_cast<double>(items.size());
}

double AveritecScore(std::span<const EvalItem> items, double threshold) {
  if (items.empty()) throw EmptyInput("AVeriTeC score of an empty item set");
  std::size_t hits = 0;
  for (const auto& it : items) {
    hits += it.predicted == it.gold && it.evidence_score >= threshold;
  }
  return static_cast<double>(hits) / static_cast<double>(items.size());
}

double FprNeutral(std::span<const EvalItem> items, Verdict label) {
  if (label != Verdict::kNotEnoughEvidence &&
      label != Verdict::kConflictingEvidenceCherryPicking) {
    throw Error("false-positive rate is defined for neutral verdicts only");
  }
  std::size_t negatives = 0;
  std::size_t false_positives = 0;
  for (const auto& it : items) {
    if (it.gold == label) continue;
    ++negatives;
    false_positives += it.predicted == label;
  }
  if (negatives == 0) {
    throw UndefinedDenominator("no item has a gold verdict other than " +
                               std::string(DisplayString(label)));
  }
  return static_cast<double>(false_positives) / static_cast<double>(negatives);
}

RoundHistogram RoundDistribution(std::span<const EvalItem> items) {
  RoundHistogram h;
  for (const auto& it : items) {
    auto& slot = h[it.rounds_used];
    (it.predicted == it.gold ? slot.correct : slot.incorrect) += 1;
  }
  return h;
}

}  // namespace debatecheck
