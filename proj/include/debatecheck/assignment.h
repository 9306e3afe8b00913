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

#ifndef DEBATECHECK_ASSIGNMENT_H_
#define DEBATECHECK_ASSIGNMENT_H_

#include <vector>

namespace debatecheck {

struct Assignment {
  // row_to_col[r] is the column matched to row r, or -1.
  std::vector<int> row_to_col;
  double total = 0;
};

// Maximum-weight one-to-one assignment on a rectangular matrix
// (rows x cols, row-major) using the Hungarian method with potentials.
// min(rows, cols) pairs are matched.
Assignment MaxWeightAssignment(const std::vector<std::vector<double>>& weights);

}  // namespace debatecheck

#endif  // DEBATECHECK_ASSIGNMENT_H_
