// Copyright 2026 The motskit Authors
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

#include "motskit/hungarian.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace mots {

namespace {

// Shortest-augmenting-path assignment with row/column potentials for a
// matrix with rows <= cols. Returns, per row, the matched column.
std::vector<int> solve_rows_leq_cols(const std::vector<double>& cost, int n,
                                     int m) {
  constexpr double kInf = std::numeric_limits<double>::infinity();
  // 1-based arrays; column 0 is the virtual root of each augmenting search.
  std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
  std::vector<int> match(m + 1, 0);  // match[j] = row assigned to column j
  for (int i = 1; i <= n; ++i) {
    std::vector<double> min_slack(m + 1, kInf);
    std::vector<int> prev(m + 1, 0);
    std::vector<char> used(m + 1, 0);
    int j0 = 0;
    match[0] = i;
    do {
      used[j0] = 1;
      const int i0 = match[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= m; ++j) {
        if (used[j]) continue;
        const double slack =
            cost[static_cast<std::size_t>(i0 - 1) * m + (j - 1)] - u[i0] -
            v[j];
        if (slack < min_slack[j]) {
          min_slack[j] = slack;
          prev[j] = j0;
        }
        if (min_slack[j] < delta) {
          delta = min_slack[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= m; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          min_slack[j] -= delta;
        }
      }
      j0 = j1;
    } while (match[j0] != 0);
    // Augment along the alternating path back to the root.
    while (j0 != 0) {
      const int j1 = prev[j0];
      match[j0] = match[j1];
      j0 = j1;
    }
  }
  std::vector<int> row_to_col(n, -1);
  for (int j = 1; j <= m; ++j) {
    if (match[j] != 0) row_to_col[match[j] - 1] = j - 1;
  }
  return row_to_col;
}

}  // namespace

std::vector<int> solve_assignment(const std::vector<double>& cost, int rows,
                                  int cols) {
  if (rows < 0 || cols < 0 ||
      cost.size() != static_cast<std::size_t>(rows) * cols) {
    throw std::invalid_argument("solve_assignment: bad matrix shape");
  }
  for (double c : cost) {
    if (!std::isfinite(c)) {
      throw std::invalid_argument("solve_assignment: non-finite cost");
    }
  }
  if (rows == 0 || cols == 0) return std::vector<int>(rows, -1);
  if (rows <= cols) return solve_rows_leq_cols(cost, rows, cols);

  // Transpose so the solver sees rows <= cols, then invert the mapping.
  std::vector<double> t(cost.size());
  for (int r = 0; r < rows; ++r) {
    for (int c = 0; c < cols; ++c) {
      t[static_cast<std::size_t>(c) * rows + r] =
          cost[static_cast<std::size_t>(r) * cols + c];
    }
  }
  const std::vector<int> col_to_row = solve_rows_leq_cols(t, cols, rows);
  std::vector<int> row_to_col(rows, -1);
  for (int c = 0; c < cols; ++c) {
    if (col_to_row[c] >= 0) row_to_col[col_to_row[c]] = c;
  }
  return row_to_col;
}

}  // namespace mots
