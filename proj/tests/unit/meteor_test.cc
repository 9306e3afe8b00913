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

#include "debatecheck/assignment.h"
#include "debatecheck/errors.h"
#include "debatecheck/meteor.h"
#include "meteor_oracle.h"

namespace debatecheck {
namespace {

TEST(MeteorTokenize, LowerCasesAndStripsPunctuation) {
  EXPECT_EQ(MeteorTokenize("The cat, sat! (on) \"the\" mat..."),
            (std::vector<std::string>{"the", "cat", "sat", "on", "the", "mat"}));
  EXPECT_EQ(MeteorTokenize("U.S. don't -- ok"),
            (std::vector<std::string>{"u.s", "don't", "ok"}));
  EXPECT_TRUE(MeteorTokenize("  ...  ").empty());
}

TEST(Meteor, HandComputedCases) {
  EXPECT_EQ(Meteor("", "any text"), 0.0);
  EXPECT_EQ(Meteor("aaa bbb", "ccc ddd"), 0.0);
  // m = 3, one chunk: Fmean = 1, penalty = 0.5 / 27.
  EXPECT_NEAR(Meteor("the cat sat", "the cat sat"), 1.0 - 0.5 / 27.0, 1e-12);
  EXPECT_NEAR(Meteor("the cat sat", "the cat sat"), 0.98148, 1e-5);
  // m = 2 of P = 2/2, R = 2/3, two chunks.
  double p = 1.0, r = 2.0 / 3.0;
  double f = 10 * p * r / (r + 9 * p);
  EXPECT_NEAR(Meteor("cat the", "the cat sat"), f * (1 - 0.5 * 1.0), 1e-12);
}

TEST(Meteor, StemMatches) {
  auto s = MeteorDetailed(MeteorTokenize("he runs fast"),
                          MeteorTokenize("he running fast"));
  EXPECT_EQ(s.exact_matches, 2);
  EXPECT_EQ(s.stem_matches, 1);
  EXPECT_EQ(s.chunks, 1);
}

TEST(Meteor, PrefersFewerChunks) {
  // Greedy left-to-right linking of "the" gives 3 chunks; the best gives 2.
  auto s = MeteorDetailed(MeteorTokenize("the cat saw the dog"),
                          MeteorTokenize("the dog and the cat saw"));
  auto o = testing::BruteForceMeteor(MeteorTokenize("the cat saw the dog"),
                                     MeteorTokenize("the dog and the cat saw"));
  EXPECT_EQ(s.matches, o.matches);
  EXPECT_EQ(s.chunks, o.chunks);
  EXPECT_NEAR(s.score, o.score, 1e-12);
}

TEST(Meteor, MatchesBruteForceOnRandomPairs) {
  const std::vector<std::string> vocab = {
      "the", "a", "claim", "claims", "claimed", "run", "runs", "running",
      "evidence", "mayor", "city", "budget", "of", "report", "reported"};
  std::mt19937 rng(2024);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<std::string> c(1 + rng() % 6), r(1 + rng() % 6);
    for (auto& w : c) w = vocab[rng() % vocab.size()];
    for (auto& w : r) w = vocab[rng() % vocab.size()];
    auto got = MeteorDetailed(c, r);
    auto want = testing::BruteForceMeteor(c, r);
    ASSERT_TRUE(got.exhaustive);
    EXPECT_EQ(got.exact_matches, want.exact);
    EXPECT_EQ(got.matches, want.matches);
    EXPECT_EQ(got.chunks, want.chunks);
    EXPECT_NEAR(got.score, want.score, 1e-12) << trial;
  }
}

TEST(Meteor, SymmetricInputsScoreInUnitInterval) {
  std::mt19937 rng(5);
  for (int i = 0; i < 100; ++i) {
    std::string a, b;
    for (int j = 0; j < 12; ++j) a += "w" + std::to_string(rng() % 8) + " ";
    for (int j = 0; j < 9; ++j) b += "w" + std::to_string(rng() % 8) + " ";
    double s = Meteor(a, b);
    EXPECT_GE(s, 0.0);
    EXPECT_LE(s, 1.0);
  }
}

TEST(MaxWeightAssignment, MatchesPermutationSearch) {
  std::mt19937 rng(9);
  std::uniform_real_distribution<double> u(0, 1);
  for (int trial = 0; trial < 300; ++trial) {
    int rows = 1 + rng() % 5, cols = 1 + rng() % 5;
    std::vector<std::vector<double>> w(rows, std::vector<double>(cols));
    for (auto& row : w) for (auto& x : row) x = rng() % 4 == 0 ? 0.0 : u(rng);
    auto a = MaxWeightAssignment(w);
    EXPECT_NEAR(a.total, testing::BruteForceAssignment(w), 1e-12);
    std::set<int> cols_used;
    int pairs = 0;
    double sum = 0;
    for (int r = 0; r < rows; ++r) {
      if (a.row_to_col[r] < 0) continue;
      ++pairs;
      EXPECT_TRUE(cols_used.insert(a.row_to_col[r]).second);
      sum += w[r][a.row_to_col[r]];
    }
    EXPECT_EQ(pairs, std::min(rows, cols));
    EXPECT_NEAR(sum, a.total, 1e-12);
  }
}

TEST(EvidenceScore, Cases) {
  std::vector<EvidenceItem> gold = {{"Where is it?", "In Paris.", ""},
                                    {"When was it built?", "In 1889.", ""}};
  EXPECT_EQ(EvidenceScore({}, gold), 0.0);
  EXPECT_THROW(EvidenceScore(gold, {}), EmptyGold);
  double self = (Meteor("Where is it? In Paris.", "Where is it? In Paris.") +
                 Meteor("When was it built? In 1889.",
                        "When was it built? In 1889.")) /
                2;
  EXPECT_NEAR(EvidenceScore(gold, gold), self, 1e-12);
  // Reversed order: the cross pairing must be chosen.
  std::vector<EvidenceItem> swapped = {gold[1], gold[0]};
  EXPECT_NEAR(EvidenceScore(swapped, gold), self, 1e-12);
  // Extra predicted items cannot lower the score.
  auto more = gold;
  more.push_back({"Unrelated?", "Yes.", ""});
  EXPECT_NEAR(EvidenceScore(more, gold), self, 1e-12);
}

}  // namespace
}  // namespace debatecheck
