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

#include <gtest/gtest.h>

#include <random>

#include "debatecheck/errors.h"
#include "debatecheck/metrics.h"

namespace debatecheck {
namespace {

constexpr Verdict S = Verdict::kSupported;
constexpr Verdict R = Verdict::kRefuted;
constexpr Verdict N = Verdict::kNotEnoughEvidence;
constexpr Verdict C = Verdict::kConflictingEvidenceCherryPicking;

EvalItem Item(Verdict pred, Verdict gold, double ev = 1.0, int rounds = 1) {
  return {"", pred, gold, ev, rounds};
}

TEST(Accuracy, Examples) {
  std::vector<EvalItem> all = {Item(S, S), Item(R, R)};
  EXPECT_EQ(Accuracy(all), 1.0);
  std::vector<EvalItem> half = {Item(S, S), Item(S, R)};
  EXPECT_EQ(Accuracy(half), 0.5);
  EXPECT_THROW(Accuracy(std::vector<EvalItem>{}), EmptyInput);
}

TEST(AveritecScore, FourItemEnumeration) {
  std::vector<EvalItem> items = {Item(S, S, 0.30), Item(R, R, 0.10),
                                 Item(S, R, 0.50), Item(N, N, 0.25)};
  EXPECT_EQ(AveritecScore(items, 0.25), 0.5);
}

TEST(AveritecScore, GoldenEqualsAccuracyAndNoEvidenceIsZero) {
  std::mt19937 rng(1);
  std::vector<EvalItem> items;
  for (int i = 0; i < 50; ++i) {
    items.push_back(Item(kAllVerdicts[rng() % 4], kAllVerdicts[rng() % 4]));
  }
  EXPECT_EQ(AveritecScore(items), Accuracy(items));
  for (auto& it : items) it.evidence_score = 0.0;
  EXPECT_EQ(AveritecScore(items), 0.0);
}

TEST(FprNeutral, Examples) {
  std::vector<EvalItem> items = {Item(N, S), Item(N, R), Item(N, N), Item(R, R)};
  EXPECT_DOUBLE_EQ(FprNeutral(items, N), 2.0 / 3.0);
  EXPECT_EQ(FprNeutral(items, C), 0.0);
  std::vector<EvalItem> all_neutral = {Item(S, N), Item(N, N)};
  EXPECT_THROW(FprNeutral(all_neutral, N), UndefinedDenominator);
  EXPECT_THROW(FprNeutral(items, S), Error);
}

TEST(RoundDistribution, Counts) {
  EXPECT_TRUE(RoundDistribution(std::vector<EvalItem>{}).empty());
  std::vector<EvalItem> one = {Item(S, S, 1, 1)};
  auto h1 = RoundDistribution(one);
  ASSERT_EQ(h1.size(), 1u);
  EXPECT_EQ(h1[1], (RoundCounts{1, 0}));
  std::vector<EvalItem> mixed = {Item(S, S, 1, 1), Item(S, R, 1, 1),
                                 Item(R, R, 1, 2), Item(N, R, 1, 3),
                                 Item(C, C, 1, 3)};
  auto h = RoundDistribution(mixed);
  EXPECT_EQ(h[1], (RoundCounts{1, 1}));
  EXPECT_EQ(h[2], (RoundCounts{1, 0}));
  EXPECT_EQ(h[3], (RoundCounts{1, 1}));
}

}  // namespace
}  // namespace debatecheck
