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

#ifndef GRAPHCLUST_SYNTH_HPP_
#define GRAPHCLUST_SYNTH_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <memory>
#include <random>
#include <vector>

#include "graphclust/data.hpp"
#include "graphclust/model.hpp"

namespace graphclust {

enum class WeightModel {
  // Block mean plus U(-noise, +noise), conditioned on staying in [0,1].
  kTruncatedUniform,
  // Weight 1 with probability equal to the block mean, else 0 (|W| = 2).
  kBernoulli,
};

struct PlantedPartitionSpec {
  std::size_t num_nodes = 20;
  std::size_t num_blocks = 2;
  double intra_weight_mean = 0.9;
  double inter_weight_mean = 0.1;
  double weight_noise = 0.0;
  double edge_observation_rate = 1.0;
  std::uint64_t seed = 0;
  // One copy per unordered pair (i < j) when set, all ordered pairs i != j
  // otherwise.
  bool symmetric = true;
  WeightModel weight_model = WeightModel::kTruncatedUniform;

  void validate() const;
};

// Conditional weight law of one node pair.
struct PairLaw {
  std::size_t i;
  std::size_t j;
  double mean;
  double variance;
  // Support of the truncated uniform law; unused for Bernoulli.
  double low;
  double high;
};

// The generating distribution: uniform over `pairs`, then the pair's weight
// law. Supports exact risk computation by enumeration.
class PairDistribution {
 public:
  PairDistribution(std::shared_ptr<const NodeSpace> nodes, std::vector<PairLaw> pairs,
                   WeightModel weight_model, bool symmetric);

  const std::shared_ptr<const NodeSpace>& node_space() const { return nodes_; }
  const std::vector<PairLaw>& pairs() const { return pairs_; }
  WeightModel weight_model() const { return weight_model_; }
  bool symmetric() const { return symmetric_; }

  double sample_weight(const PairLaw& pair, std::mt19937_64& rng) const;

 private:
  std::shared_ptr<const NodeSpace> nodes_;
  std::vector<PairLaw> pairs_;
  WeightModel weight_model_;
  bool symmetric_;
};

struct SyntheticGraph {
  EdgeDataset data;
  // Planted block of every node (round-robin: node i is in block i mod B).
  std::vector<std::size_t> labels;
  std::size_t num_blocks;
  PairDistribution truth;
};

// Every pair is observed independently with probability
// edge_observation_rate and, if observed, gets one weight draw.
SyntheticGraph generate(const PlantedPartitionSpec& spec);

// n i.i.d. draws of (pair, weight) from the generating distribution. Pairs
// may repeat.
EdgeDataset sample_iid(const PairDistribution& truth, std::size_t n,
                       std::uint64_t seed);

// Hard planted assignment with the exact pair means as cell weights.
ClusterModel ground_truth_model(const SyntheticGraph& graph);

// Expected loss of the randomized cluster predictor (the quantity
// empirical_loss estimates) under the generating distribution:
//   mean over pairs of Var[W] + Σ_{c1,c2} q(c1|i) q(c2|j) (E[W] - g(c1,c2))².
double exact_expected_loss(const ClusterModel& model, const PairDistribution& truth);

// Mean over pairs of Var[W] + (E[W] - predict_edge(i,j))².
double exact_expected_point_loss(const ClusterModel& model,
                                 const PairDistribution& truth);

// Two columns per line: `node<TAB>label`.
void write_labels(std::ostream& out, const NodeSpace& nodes,
                  const std::vector<std::size_t>& labels);
// Labels indexed by the node space; every node must appear exactly once.
std::vector<std::size_t> read_labels(std::istream& in, const NodeSpace& nodes);

}  // namespace graphclust

#endif  // GRAPHCLUST_SYNTH_HPP_
