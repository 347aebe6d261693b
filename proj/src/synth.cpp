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

#include "graphclust/synth.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace graphclust {

namespace {

PairLaw make_law(std::size_t i, std::size_t j, double block_mean, double noise,
                 WeightModel model) {
  if (model == WeightModel::kBernoulli) {
    return {i, j, block_mean, block_mean * (1.0 - block_mean), block_mean, block_mean};
  }
  const double low = std::max(0.0, block_mean - noise);
  const double high = std::min(1.0, block_mean + noise);
  const double width = high - low;
  return {i, j, 0.5 * (low + high), width * width / 12.0, low, high};
}

template <typename RiskFn>
double enumerate_risk(const ClusterModel& model, const PairDistribution& truth,
                      RiskFn&& risk) {
  if (model.num_nodes() != truth.node_space()->size()) {
    throw std::invalid_argument("model and distribution disagree on |X|");
  }
  const Matrix& q = model.assignment.matrix();
  const Matrix& g = model.weights.matrix();
  const Matrix first = q * g.transpose();
  const Matrix second = q * g.cwiseProduct(g).transpose();
  double total = 0.0;
  for (const auto& p : truth.pairs()) {
    const auto i = static_cast<Eigen::Index>(p.i);
    const auto j = static_cast<Eigen::Index>(p.j);
    total += risk(p, q.row(i).dot(first.row(j)), q.row(i).dot(second.row(j)));
  }
  return total / static_cast<double>(truth.pairs().size());
}

}  // namespace

void PlantedPartitionSpec::validate() const {
  if (num_nodes < 2) throw std::invalid_argument("need at least 2 nodes");
  if (num_blocks < 1 || num_blocks > num_nodes) {
    throw std::invalid_argument("num_blocks must lie in [1, num_nodes]");
  }
  for (double m : {intra_weight_mean, inter_weight_mean}) {
    if (!(m >= 0.0 && m <= 1.0)) throw std::invalid_argument("block means must lie in [0,1]");
  }
  if (!(weight_noise >= 0.0)) throw std::invalid_argument("weight noise must be >= 0");
  if (!(edge_observation_rate > 0.0 && edge_observation_rate <= 1.0)) {
    throw std::invalid_argument("observation rate must lie in (0,1]");
  }
}

PairDistribution::PairDistribution(std::shared_ptr<const NodeSpace> nodes,
                                   std::vector<PairLaw> pairs,
                                   WeightModel weight_model, bool symmetric)
    : nodes_(std::move(nodes)),
      pairs_(std::move(pairs)),
      weight_model_(weight_model),
      symmetric_(symmetric) {
  if (!nodes_ || pairs_.empty()) {
    throw std::invalid_argument("pair distribution needs nodes and pairs");
  }
}

double PairDistribution::sample_weight(const PairLaw& pair, std::mt19937_64& rng) const {
  if (weight_model_ == WeightModel::kBernoulli) {
    return std::bernoulli_distribution(pair.mean)(rng) ? 1.0 : 0.0;
  }
  if (pair.high <= pair.low) return pair.low;
  return std::uniform_real_distribution<double>(pair.low, pair.high)(rng);
}

SyntheticGraph generate(const PlantedPartitionSpec& spec) {
  spec.validate();
  std::vector<std::string> names(spec.num_nodes);
  std::vector<std::size_t> labels(spec.num_nodes);
  for (std::size_t i = 0; i < spec.num_nodes; ++i) {
    names[i] = "n" + std::to_string(i);
    labels[i] = i % spec.num_blocks;
  }
  auto nodes = std::make_shared<const NodeSpace>(std::move(names));

  std::vector<PairLaw> pairs;
  for (std::size_t i = 0; i < spec.num_nodes; ++i) {
    for (std::size_t j = spec.symmetric ? i + 1 : 0; j < spec.num_nodes; ++j) {
      if (i == j) continue;
      const double mean = labels[i] == labels[j] ? spec.intra_weight_mean
                                                 : spec.inter_weight_mean;
      pairs.push_back(make_law(i, j, mean, spec.weight_noise, spec.weight_model));
    }
  }
  PairDistribution truth(nodes, std::move(pairs), spec.weight_model, spec.symmetric);

  std::mt19937_64 rng(spec.seed);
  std::bernoulli_distribution observe(spec.edge_observation_rate);
  std::vector<EdgeObservation> edges;
  for (const auto& p : truth.pairs()) {
    if (!observe(rng)) continue;
    edges.push_back({p.i, p.j, truth.sample_weight(p, rng)});
  }
  if (edges.empty()) throw DataError("planted partition produced no observed edges");

  DatasetOptions options;
  options.symmetric = spec.symmetric;
  EdgeDataset data(nodes, std::move(edges), options);
  return {std::move(data), std::move(labels), spec.num_blocks, std::move(truth)};
}

EdgeDataset sample_iid(const PairDistribution& truth, std::size_t n,
                       std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("sample size must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<std::size_t> pick(0, truth.pairs().size() - 1);
  std::vector<EdgeObservation> edges;
  edges.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto& p = truth.pairs()[pick(rng)];
    edges.push_back({p.i, p.j, truth.sample_weight(p, rng)});
  }
  DatasetOptions options;
  options.symmetric = truth.symmetric();
  options.with_replacement = true;
  return EdgeDataset(truth.node_space(), std::move(edges), options);
}

ClusterModel ground_truth_model(const SyntheticGraph& graph) {
  const auto blocks = static_cast<Eigen::Index>(graph.num_blocks);
  Matrix g = Matrix::Zero(blocks, blocks);
  Matrix seen = Matrix::Zero(blocks, blocks);
  for (const auto& p : graph.truth.pairs()) {
    const auto a = static_cast<Eigen::Index>(graph.labels[p.i]);
    const auto b = static_cast<Eigen::Index>(graph.labels[p.j]);
    g(a, b) = g(b, a) = p.mean;
    seen(a, b) = seen(b, a) = 1.0;
  }
  // A block pair with no node pairs (single-node block) never predicts.
  for (Eigen::Index k = 0; k < g.size(); ++k) {
    if (seen.data()[k] == 0.0) g.data()[k] = 0.0;
  }
  return ClusterModel(Assignment::hard(graph.labels, graph.num_blocks),
                      ClusterWeights(std::move(g)), graph.truth.symmetric());
}

double exact_expected_loss(const ClusterModel& model, const PairDistribution& truth) {
  return enumerate_risk(model, truth, [](const PairLaw& p, double mean, double moment) {
    return p.variance + p.mean * p.mean - 2.0 * p.mean * mean + moment;
  });
}

double exact_expected_point_loss(const ClusterModel& model,
                                 const PairDistribution& truth) {
  return enumerate_risk(model, truth, [](const PairLaw& p, double mean, double) {
    return p.variance + (p.mean - mean) * (p.mean - mean);
  });
}

void write_labels(std::ostream& out, const NodeSpace& nodes,
                  const std::vector<std::size_t>& labels) {
  if (labels.size() != nodes.size()) {
    throw std::invalid_argument("one label per node required");
  }
  for (std::size_t i = 0; i < labels.size(); ++i) {
    out << nodes.label(i) << '\t' << labels[i] << '\n';
  }
}

std::vector<std::size_t> read_labels(std::istream& in, const NodeSpace& nodes) {
  std::vector<std::size_t> labels(nodes.size(), 0);
  std::vector<char> assigned(nodes.size(), 0);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    std::istringstream fields(line);
    std::string node;
    long long label = -1;
    if (!(fields >> node >> label) || label < 0) {
      throw DataError("labels line " + std::to_string(line_no) + ": expected `node label`");
    }
    const auto index = nodes.find(node);
    if (!index) throw DataError("labels line " + std::to_string(line_no) + ": unknown node '" + node + "'");
    if (assigned[*index]++) throw DataError("node '" + node + "' labeled twice");
    labels[*index] = static_cast<std::size_t>(label);
  }
  for (std::size_t i = 0; i < assigned.size(); ++i) {
    if (!assigned[i]) throw DataError("node '" + nodes.label(i) + "' has no label");
  }
  return labels;
}

}  // namespace graphclust
