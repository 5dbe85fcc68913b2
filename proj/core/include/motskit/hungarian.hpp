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

#ifndef MOTSKIT_HUNGARIAN_HPP_
#define MOTSKIT_HUNGARIAN_HPP_

#include <vector>

namespace mots {

// Minimum-cost one-to-one assignment for a rows x cols cost matrix stored
// row-major. Every row (or every column, when rows > cols) is assigned;
// the returned vector maps each row to its column, or -1 for rows left
// unassigned. O(n^2 * m) shortest-augmenting-path implementation.
std::vector<int> solve_assignment(const std::vector<double>& cost, int rows,
                                  int cols);

}  // namespace mots

#endif  // MOTSKIT_HUNGARIAN_HPP_
