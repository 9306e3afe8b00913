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

// Exhaustive reference implementations used as test oracles: METEOR by
// enumerating every alignment, and assignment by enumerating permutations.
// Only suitable for short inputs.

#ifndef DEBATECHECK_TESTS_METEOR_ORACLE_H_
#define DEBATECHECK_TESTS_METEOR_ORACLE_H_

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "debatecheck/model.h"
#include "debatecheck/stemmer.h"

namespace debatecheck::testing {

struct OracleMeteor {
  int exact = 0;
  int matches = 0;
  int chunks = 0;
  double score = 0;
};

inline int CountChunks(const std::vector<int>& link) {
  int chunks = 0;
  int prev_c = -2, prev_r = -2;
  for (int c = 0; c < static_cast<int>(link.size()); ++c) {
    if (link[c] < 0) continue;
    if (!(c == prev_c + 1 && link[c] == prev_r + 1)) ++chunks;
    prev_c = c;
    prev_r = link[c];
  }
  return chunks;
}

// Enumerates every one-to-one alignment whose links join equal words or
// different words with equal stems. Keeps those with the most exact links,
// then the most links, then the fewest chunks.
inline OracleMeteor BruteForceMeteor(const std::vector<std::string>& cand,
                                     const std::vector<std::string>& ref) {
  const int n = cand.size(), k = ref.size();
  std::vector<int> link(n, -1);
  std::vector<bool> used(k, false);
  OracleMeteor best{-1, -1, 0, 0};
  std::function<void(int, int, int)> go = [&](int i, int exact, int total) {
    if (i == n) {
      int chunks = CountChunks(link);
      if (exact > best.exact || (exact == best.exact && total > best.matches) ||
          (exact == best.exact && total == best.matches && chunks < best.chunks)) {
        best = {exact, total, chunks, 0};
      }
      return;
    }
    go(i + 1, exact, total);
    for (int j = 0; j < k; ++j) {
      if (used[j]) continue;
      bool is_exact = cand[i] == ref[j];
      if (!is_exact && PorterStem(cand[i]) != PorterStem(ref[j])) continue;
      used[j] = true;
      link[i] = j;
      go(i + 1, exact + is_exact, total + 1);
      link[i] = -1;
      used[j] = false;
    }
  };
  go(0, 0, 0);
  if (best.matches <= 0) return {0, 0, 0, 0};
  const double m = best.matches;
  const double p = m / n, r = m / k;
  const double fmean = 10 * p * r / (r + 9 * p);
  const double penalty = 0.5 * std::pow(best.chunks / m, 3);
  best.score = fmean * (1 - penalty);
  return best;
}

// Max over injective maps of the smaller side into the larger.
inline double BruteForceAssignment(const std::vector<std::vector<double>>& w) {
  const int rows = w.size();
  const int cols = rows ? w[0].size() : 0;
  const bool transpose = rows > cols;
  const int a = transpose ? cols : rows, b = transpose ? rows : cols;
  auto at = [&](int i, int j) { return transpose ? w[j][i] : w[i][j]; };
  std::vector<int> perm(b);
  std::iota(perm.begin(), perm.end(), 0);
  double best = 0;
  do {
    double s = 0;
    for (int i = 0; i < a; ++i) s += at(i, perm[i]);
    best = std::max(best, s);
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

}  // namespace debatecheck::testing

#endif  // DEBATECHECK_TESTS_METEOR_ORACLE_H_
