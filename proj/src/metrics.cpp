// Copyright 2026 The graphclust Authors.
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

#include "graphclust/metrics.hpp"

#include <map>
#include <stdexcept>
#include <utility>

namespace graphclust {

namespace {

double pairs(double n) { return 0.5 * n * (n - 1.0); }

}  // namespace

double adjusted_rand_index(std::span<const std::size_t> a,
                           std::span<const std::size_t> b) {
  if (a.size() != b.size()) throw std::invalid_argument("labelings differ in length");
  if (a.empty()) throw std::invalid_argument("empty labeling");
  if (a.size() < 2) return 1.0;
  std::map<std::pair<std::size_t, std::size_t>, double> table;
  std::map<std::size_t, double> rows, cols;
  for (std::size_t k = 0; k < a.size(); ++k) {
    table[{a[k], b[k]}] += 1.0;
    rows[a[k]] += 1.0;
    cols[b[k]] += 1.0;
  }
  double index = 0.0, sum_rows = 0.0, sum_cols = 0.0;
  for (const auto& [key, n] : table) index += pairs(n);
  for (const auto& [key, n] : rows) sum_rows += pairs(n);
  for (const auto& [key, n] : cols) sum_cols += pairs(n);
  const double expected = sum_rows * sum_cols / pairs(static_cast<double>(a.size()));
  const double max_index = 0.5 * (sum_rows + sum_cols);
  if (max_index == expected) return 1.0;
  return (index - expected) / (max_index - expected);
}

}  // namespace graphclust
