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

#ifndef GRAPHCLUST_MODEL_HPP_
#define GRAPHCLUST_MODEL_HPP_

#include <cstddef>
#include <iosfwd>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "graphclust/data.hpp"

namespace graphclust {

using Matrix = Eigen::Matrix<double, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>;

// Soft clustering q(c|x): one row per node, one column per cluster, rows
// are probability distributions.
class Assignment {
 public:
  // Validates row-stochasticity (entries >= 0, rows sum to 1 within 1e-9).
  explicit Assignment(Matrix q);

  // Rescales each row to sum to 1. Rows must be nonnegative with a positive
  // sum.
  static Assignment normalized(Matrix q);
  static Assignment uniform(std::size_t num_nodes, std::size_t num_clusters);
  // One-hot rows from cluster labels in [0, num_clusters).
  static Assignment hard(std::span<const std::size_t> labels,
                         std::size_t num_clusters);

  std::size_t num_nodes() const { return static_cast<std::size_t>(q_.rows()); }
  std::size_t num_clusters() const { return static_cast<std::size_t>(q_.cols()); }
  const Matrix& matrix() const { return q_; }
  double operator()(std::size_t x, std::size_t c) const { return q_(x, c); }

  // q̄(c) = (1/|X|) Σ_x q(c|x).
  Eigen::VectorXd marginal() const;
  // argmax_c q(c|x) per node; ties resolve to the lowest cluster index.
  std::vector<std::size_t> hard_labels() const;

 private:
  Matrix q_;
};

// Cell weights g(c1,c2) of the cluster product space, each in [0,1].
class ClusterWeights {
 public:
  explicit ClusterWeights(Matrix g);
  static ClusterWeights constant(std::size_t num_clusters, double value);

  std::size_t num_clusters() const { return static_cast<std::size_t>(g_.rows()); }
  const Matrix& matrix() const { return g_; }
  double operator()(std::size_t a, std::size_t b) const { return g_(a, b); }

 private:
  Matrix g_;
};

struct ClusterModel {
  ClusterModel(Assignment assignment, ClusterWeights weights, bool symmetric = false);

  std::size_t num_nodes() const { return assignment.num_nodes(); }
  std::size_t num_clusters() const { return assignment.num_clusters(); }

  Assignment assignment;
  ClusterWeights weights;
  bool symmetric;
};

// Σ_{c1,c2} q(c1|i) g(c1,c2) q(c2|j): the mean of the predictive
// distribution q(W|i,j).
double predict_edge(const ClusterModel& model, std::size_t i, std::size_t j);

// Empirical quadratic loss of the cluster-based prediction strategy:
//
//   L̂ = (1/N) Σ_(i,j,w) Σ_{c1,c2} q(c1|i) q(c2|j) (w - g(c1,c2))²,
//
// i.e. the loss of predicting with cell weight g(c1,c2) after drawing the
// clusters of both endpoints from q. This is the loss the generalization
// bound controls and the one minimized cell-wise by ml_cluster_weights. It
// reduces to point_loss for hard assignments.
double empirical_loss(const ClusterModel& model, const EdgeDataset& data);

// (1/N) Σ (w - predict_edge(i,j))², the squared Frobenius form
// (1/N)‖S∘(M - QᵀGQ)‖². Never larger than empirical_loss (Jensen).
double point_loss(const ClusterModel& model, const EdgeDataset& data);

// Mass-weighted mean weight of every cell,
//   g(c1,c2) = Σ q(c1|i) w q(c2|j) / Σ q(c1|i) q(c2|j),
// the cell-wise minimizer of empirical_loss for a fixed assignment. Cells
// with mass below 1e-12 take the global mean weight. For symmetric data
// cells (a,b) and (b,a) are pooled, so G is symmetric.
ClusterWeights ml_cluster_weights(const Assignment& assignment,
                                  const EdgeDataset& data);

// ∂L̂/∂q(c|x) with G held fixed, as a |X|×|C| matrix.
Matrix loss_gradient(const ClusterModel& model, const EdgeDataset& data);

// ∂(point_loss)/∂q(c|x) with G fixed. In the reconstruction-matrix
// notation this is 2/N [G Q (S∘R)ᵀ + Gᵀ Q (S∘R)] with R = QᵀGQ - M, so the
// constant differs from the often-quoted 4GᵀQ(S∘R)/N unless both edge
// directions are stored and G is symmetric.
Matrix point_loss_gradient(const ClusterModel& model, const EdgeDataset& data);

// Ī(X;C) under a uniform distribution over nodes, in nats.
double mutual_information(const Assignment& assignment);

// Text format: a header line "|X| |C| symmetric", then Q row-major (one node
// per line), then G row-major, all at full double precision.
void write_model(std::ostream& out, const ClusterModel& model);
ClusterModel read_model(std::istream& in);

}  // namespace graphclust

#endif  // GRAPHCLUST_MODEL_HPP_
