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

#include "graphclust/model.hpp"

#include <algorithm>
#include <cmath>
#include <istream>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace graphclust {

namespace {

constexpr double kRowSumTolerance = 1e-9;
constexpr double kEmptyCellMass = 1e-12;

void check_compatible(const ClusterModel& model, const EdgeDataset& data) {
  if (model.num_nodes() != data.num_nodes()) {
    throw std::invalid_argument("model has " + std::to_string(model.num_nodes()) +
                                " nodes but dataset has " +
                                std::to_string(data.num_nodes()));
  }
}

void require_nonempty(const EdgeDataset& data) {
  if (data.empty()) throw DataError("loss of an empty dataset");
}

}  // namespace

Assignment::Assignment(Matrix q) : q_(std::move(q)) {
  if (q_.rows() < 1 || q_.cols() < 1) {
    throw std::invalid_argument("assignment needs at least one node and cluster");
  }
  for (Eigen::Index x = 0; x < q_.rows(); ++x) {
    double sum = 0.0;
    for (Eigen::Index c = 0; c < q_.cols(); ++c) {
      const double v = q_(x, c);
      if (!(v >= 0.0) || !std::isfinite(v)) {
        throw std::invalid_argument("assignment entries must be finite and >= 0");
      }
      sum += v;
    }
    if (std::abs(sum - 1.0) > kRowSumTolerance) {
      throw std::invalid_argument("assignment row " + std::to_string(x) +
                                  " does not sum to 1");
    }
  }
}

Assignment Assignment::normalized(Matrix q) {
  for (Eigen::Index x = 0; x < q.rows(); ++x) {
    const double sum = q.row(x).sum();
    if (!(sum > 0.0) || !std::isfinite(sum)) {
      throw std::domain_error("assignment row " + std::to_string(x) +
                              " has no positive mass");
    }
    q.row(x) /= sum;
  }
  return Assignment(std::move(q));
}

Assignment Assignment::uniform(std::size_t num_nodes, std::size_t num_clusters) {
  return Assignment(Matrix::Constant(static_cast<Eigen::Index>(num_nodes),
                                     static_cast<Eigen::Index>(num_clusters),
                                     1.0 / static_cast<double>(num_clusters)));
}

Assignment Assignment::hard(std::span<const std::size_t> labels,
                            std::size_t num_clusters) {
  Matrix q = Matrix::Zero(static_cast<Eigen::Index>(labels.size()),
                          static_cast<Eigen::Index>(num_clusters));
  for (std::size_t x = 0; x < labels.size(); ++x) {
    if (labels[x] >= num_clusters) throw std::invalid_argument("cluster label out of range");
    q(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(labels[x])) = 1.0;
  }
  return Assignment(std::move(q));
}

Eigen::VectorXd Assignment::marginal() const {
  return q_.colwise().sum().transpose() / static_cast<double>(q_.rows());
}

std::vector<std::size_t> Assignment::hard_labels() const {
  std::vector<std::size_t> labels(num_nodes());
  for (Eigen::Index x = 0; x < q_.rows(); ++x) {
    Eigen::Index best = 0;
    q_.row(x).maxCoeff(&best);
    labels[static_cast<std::size_t>(x)] = static_cast<std::size_t>(best);
  }
  return labels;
}

ClusterWeights::ClusterWeights(Matrix g) : g_(std::move(g)) {
  if (g_.rows() < 1 || g_.rows() != g_.cols()) {
    throw std::invalid_argument("cluster weights must be a nonempty square matrix");
  }
  for (Eigen::Index k = 0; k < g_.size(); ++k) {
    const double v = g_.data()[k];
    if (!(v >= 0.0 && v <= 1.0)) {
      throw std::invalid_argument("cluster weights must lie in [0,1]");
    }
  }
}

ClusterWeights ClusterWeights::constant(std::size_t num_clusters, double value) {
  const auto c = static_cast<Eigen::Index>(num_clusters);
  return ClusterWeights(Matrix::Constant(c, c, value));
}

ClusterModel::ClusterModel(Assignment a, ClusterWeights w, bool sym)
    : assignment(std::move(a)), weights(std::move(w)), symmetric(sym) {
  if (assignment.num_clusters() != weights.num_clusters()) {
    throw std::invalid_argument("assignment and cluster weights disagree on |C|");
  }
}

double predict_edge(const ClusterModel& model, std::size_t i, std::size_t j) {
  if (i >= model.num_nodes() || j >= model.num_nodes()) {
    throw std::out_of_range("node index out of range");
  }
  const auto& q = model.assignment.matrix();
  const auto& g = model.weights.matrix();
  const auto qi = q.row(static_cast<Eigen::Index>(i));
  const auto qj = q.row(static_cast<Eigen::Index>(j));
  return qi.dot(g * qj.transpose());
}

double empirical_loss(const ClusterModel& model, const EdgeDataset& data) {
  check_compatible(model, data);
  require_nonempty(data);
  const Matrix& q = model.assignment.matrix();
  const Matrix& g = model.weights.matrix();
  // Row j of first/second holds (G q_j)ᵀ and ((G∘G) q_j)ᵀ.
  const Matrix first = q * g.transpose();
  const Matrix second = q * g.cwiseProduct(g).transpose();
  double total = 0.0;
  for (const auto& e : data.edges()) {
    const auto i = static_cast<Eigen::Index>(e.i);
    const auto j = static_cast<Eigen::Index>(e.j);
    const double mean = q.row(i).dot(first.row(j));
    const double moment = q.row(i).dot(second.row(j));
    total += e.w * e.w - 2.0 * e.w * mean + moment;
  }
  return std::max(0.0, total / static_cast<double>(data.size()));
}

double point_loss(const ClusterModel& model, const EdgeDataset& data) {
  check_compatible(model, data);
  require_nonempty(data);
  const Matrix& q = model.assignment.matrix();
  const Matrix first = q * model.weights.matrix().transpose();
  double total = 0.0;
  for (const auto& e : data.edges()) {
    const double r = e.w - q.row(static_cast<Eigen::Index>(e.i))
                               .dot(first.row(static_cast<Eigen::Index>(e.j)));
    total += r * r;
  }
  return total / static_cast<double>(data.size());
}

ClusterWeights ml_cluster_weights(const Assignment& assignment,
                                  const EdgeDataset& data) {
  if (assignment.num_nodes() != data.num_nodes()) {
    throw std::invalid_argument("assignment and dataset disagree on |X|");
  }
  if (data.empty()) throw DataError("cannot fit cluster weights to an empty dataset");
  const Matrix& q = assignment.matrix();
  const Eigen::Index n = q.rows();
  const Eigen::Index c = q.cols();
  // Per source node: Σ_j w q_j and Σ_j q_j over its observed edges.
  Matrix weighted = Matrix::Zero(n, c);
  Matrix mass = Matrix::Zero(n, c);
  for (const auto& e : data.edges()) {
    const auto i = static_cast<Eigen::Index>(e.i);
    const auto qj = q.row(static_cast<Eigen::Index>(e.j));
    weighted.row(i) += e.w * qj;
    mass.row(i) += qj;
  }
  Matrix numer = q.transpose() * weighted;
  Matrix denom = q.transpose() * mass;
  if (data.symmetric()) {
    numer = (numer + numer.transpose()).eval();
    denom = (denom + denom.transpose()).eval();
  }
  const double fallback = data.mean_weight();
  Matrix g(c, c);
  for (Eigen::Index a = 0; a < c; ++a) {
    for (Eigen::Index b = 0; b < c; ++b) {
      g(a, b) = denom(a, b) < kEmptyCellMass
                    ? fallback
                    : std::clamp(numer(a, b) / denom(a, b), 0.0, 1.0);
    }
  }
  return ClusterWeights(std::move(g));
}

Matrix loss_gradient(const ClusterModel& model, const EdgeDataset& data) {
  check_compatible(model, data);
  require_nonempty(data);
  const Matrix& q = model.assignment.matrix();
  const Matrix& g = model.weights.matrix();
  const Matrix g2 = g.cwiseProduct(g);
  // Source side needs G q_j, target side needs Gᵀ q_i.
  const Matrix src_first = q * g.transpose();
  const Matrix src_second = q * g2.transpose();
  const Matrix dst_first = q * g;
  const Matrix dst_second = q * g2;
  Matrix grad = Matrix::Zero(q.rows(), q.cols());
  for (const auto& e : data.edges()) {
    const auto i = static_cast<Eigen::Index>(e.i);
    const auto j = static_cast<Eigen::Index>(e.j);
    const double w2 = e.w * e.w;
    grad.row(i).array() += w2 - 2.0 * e.w * src_first.row(j).array() +
                           src_second.row(j).array();
    grad.row(j).array() += w2 - 2.0 * e.w * dst_first.row(i).array() +
                           dst_second.row(i).array();
  }
  grad /= static_cast<double>(data.size());
  return grad;
}

Matrix point_loss_gradient(const ClusterModel& model, const EdgeDataset& data) {
  check_compatible(model, data);
  require_nonempty(data);
  const Matrix& q = model.assignment.matrix();
  const Matrix& g = model.weights.matrix();
  const Matrix src = q * g.transpose();
  const Matrix dst = q * g;
  Matrix grad = Matrix::Zero(q.rows(), q.cols());
  for (const auto& e : data.edges()) {
    const auto i = static_cast<Eigen::Index>(e.i);
    const auto j = static_cast<Eigen::Index>(e.j);
    const double r = q.row(i).dot(src.row(j)) - e.w;
    grad.row(i) += 2.0 * r * src.row(j);
    grad.row(j) += 2.0 * r * dst.row(i);
  }
  grad /= static_cast<double>(data.size());
  return grad;
}

double mutual_information(const Assignment& assignment) {
  const Matrix& q = assignment.matrix();
  const Eigen::VectorXd marginal = assignment.marginal();
  double total = 0.0;
  for (Eigen::Index x = 0; x < q.rows(); ++x) {
    for (Eigen::Index c = 0; c < q.cols(); ++c) {
      const double p = q(x, c);
      if (p > 0.0) total += p * std::log(p / marginal(c));
    }
  }
  return std::max(0.0, total / static_cast<double>(q.rows()));
}

void write_model(std::ostream& out, const ClusterModel& model) {
  const auto precision = out.precision(std::numeric_limits<double>::max_digits10);
  const Matrix& q = model.assignment.matrix();
  const Matrix& g = model.weights.matrix();
  out << q.rows() << ' ' << q.cols() << ' ' << (model.symmetric ? 1 : 0) << '\n';
  auto write_rows = [&out](const Matrix& m) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
      for (Eigen::Index c = 0; c < m.cols(); ++c) {
        if (c > 0) out << ' ';
        out << m(r, c);
      }
      out << '\n';
    }
  };
  write_rows(q);
  write_rows(g);
  out.precision(precision);
}

ClusterModel read_model(std::istream& in) {
  long long nodes = 0, clusters = 0;
  int symmetric = 0;
  if (!(in >> nodes >> clusters >> symmetric) || nodes < 1 || clusters < 1 ||
      (symmetric != 0 && symmetric != 1)) {
    throw DataError("model file: bad header");
  }
  auto read_rows = [&in](Eigen::Index rows, Eigen::Index cols) {
    Matrix m(rows, cols);
    for (Eigen::Index r = 0; r < rows; ++r) {
      for (Eigen::Index c = 0; c < cols; ++c) {
        if (!(in >> m(r, c))) throw DataError("model file: truncated matrix");
      }
    }
    return m;
  };
  Matrix q = read_rows(nodes, clusters);
  Matrix g = read_rows(clusters, clusters);
  try {
    return ClusterModel(Assignment(std::move(q)), ClusterWeights(std::move(g)),
                        symmetric == 1);
  } catch (const std::invalid_argument& e) {
    throw DataError(std::string("model file: ") + e.what());
  }
}

}  // namespace graphclust
