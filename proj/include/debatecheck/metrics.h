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

// Verdict-level evaluation: accuracy, the AVeriTeC score, false-positive
// rates for the neutral verdicts and the rounds-used histogram.

#ifndef DEBATECHECK_METRICS_H_
#define DEBATECHECK_METRICS_H_

#include <map>
#include <span>
#include <string>
#include <utility>

#include "debatecheck/model.h"

namespace debatecheck {

inline constexpr double kDefaultEvidenceThreshold = 0.25;

struct EvalItem {
  std::string claim_id;
  Verdict predicted = Verdict::kSupported;
  Verdict gold = Verdict::kSupported;
  double evidence_score = 0;  // 1 under golden evidence, 0 with none
  int rounds_used = 0;
};

// Throws EmptyInput.
double Accuracy(std::span<const EvalItem> items);

// Fraction of *all* items whose verdict is correct and whose evidence score
// reaches `threshold`. Throws EmptyInput.
double AveritecScore(std::span<const EvalItem> items,
                     double threshold = kDefaultEvidenceThreshold);

// FP / (FP + TN) for predicting `label`: among items whose gold verdict is
// not `label`, the share predicted as `label`. `label` must be one of the two
// neutral verdicts (Error otherwise); throws UndefinedDenominator when every
// gold verdict equals `label`.
double FprNeutral(std::span<const EvalItem> items, Verdict label);

struct RoundCounts {
  int correct = 0;
  int incorrect = 0;
  friend bool operator==(const RoundCounts&, const RoundCounts&) = default;
};
using RoundHistogram = std::map<int, RoundCounts>;

RoundHistogram RoundDistribution(std::span<const EvalItem> items);

}  // namespace debatecheck

#endif  // DEBATECHECK_METRICS_H_
