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

#include <gtest/gtest.h>

#include <random>
#include <vector>

#include "oracles.hpp"

namespace graphclust {
namespace {

using Labels = std::vector<std::size_t>;

TEST(AdjustedRandIndexTest, Examples) {
  EXPECT_EQ(adjusted_rand_index(Labels{0, 0, 1, 1}, Labels{1, 1, 0, 0}), 1.0);
  EXPECT_EQ(adjusted_rand_index(Labels{0, 0, 0}, Labels{2, 2, 2}), 1.0);
  EXPECT_EQ(adjusted_rand_index(Labels{0}, Labels{3}), 1.0);
  // Textbook case: ARI of {0,0,1,1} against {0,0,1,2} is 4/7.
  EXPECT_NEAR(adjusted_rand_index(Labels{0, 0, 1, 1}, Labels{0, 0, 1, 2}), 4.0 / 7.0, 1e-15);
  EXPECT_LT(adjusted_rand_index(Labels{0, 1, 0, 1}, Labels{0, 0, 1, 1}), 0.0);
  EXPECT_THROW(adjusted_rand_index(Labels{0, 1}, Labels{0}), std::invalid_argument);
}

TEST(AdjustedRandIndexTest, MatchesPairCounting) {
  std::mt19937_64 rng(5);
  std::uniform_int_distribution<std::size_t> pick(0, 3);
  for (int trial = 0; trial < 50; ++trial) {
    Labels a(15), b(15);
    for (auto& v : a) v = pick(rng);
    for (auto& v : b) v = pick(rng);
    EXPECT_NEAR(adjusted_rand_index(a, b), oracle::adjusted_rand_index(a, b), 1e-12);
    EXPECT_NEAR(adjusted_rand_index(a, b), adjusted_rand_index(b, a), 1e-15);
  }
}

}  // namespace
}  // namespace graphclust
