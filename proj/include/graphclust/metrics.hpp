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

#ifndef GRAPHCLUST_METRICS_HPP_
#define GRAPHCLUST_METRICS_HPP_

#include <cstddef>
#include <span>

namespace graphclust {

// Adjusted Rand index between two labelings of the same items. Returns 1 when
// both partitions are identical, including the degenerate single-cluster
// case where the chance correction is undefined.
double adjusted_rand_index(std::span<const std::size_t> a,
                           std::span<const std::size_t> b);

}  // namespace graphclust

#endif  // GRAPHCLUST_METRICS_HPP_
