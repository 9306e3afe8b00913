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

#include "debatecheck/assignment.h"

#include <algorithm>
#include <limits>

namespace debatecheck {

Assignment MaxWeightAssignment(const std::vector<std::vector<double>>& weights) {
  Assignment out;
  const int rows = static_cast<int>(weights.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(weights[0].size());
  out.row_to_col.assign(rows, -1);
  if (rows == 0 || cols == 0) return out;

  // Solve min-cost with n <= m; transpose when there are more rows.
  const bool transposed = rows > cols;
  const int n = transposed ? cols : rows;
  const int m = transposed ? rows : cols;
  auto cost = [&](int i, int j) {  // 1-based
    return transposed ? -weights[j - 1][i - 1] : -weights[i - 1][j - 1];
  };

  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0), v(m + 1, 0);
  std::vector<int> p(m + 1, 0), way(m + 1, 0);
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(m + 1, kInf);
    std::vector<char> used(m + 1, false);
    do {
      used[j0] = true;
      int i0 = p[j0];
      int j1 = 0;
      double delta = kInf;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        double cur = cost(i0, j) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }

  for (int j = 1; j <= m; ++j) {
    if (p[j] == 0) continue;
    int small = p[j] - 1;  // index along the short side
    int large = j - 1;
    if (transposed) {
      out.row_to_col[large] = small;
    } else {
      out.row_to_col[small] = large;
    }
  }
  for (int r = 0; r < rows; ++r) {
    if (out.row_to_col[r] >= 0) out.total += weights[r][out.row_to_col[r]];
  }
  return out;
}

}  // namespace debatecheck
