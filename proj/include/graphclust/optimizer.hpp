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

#ifndef GRAPHCLUST_OPTIMIZER_HPP_
#define GRAPHCLUST_OPTIMIZER_HPP_

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <vector>

#include "graphclust/data.hpp"
#include "graphclust/model.hpp"

namespace graphclust {

struct OptimizerConfig {
  // Target trade-off parameter β of 𝒢 = βN·L̂ + |X|·Ī.
  double beta = 1.0;
  std::size_t num_clusters = 2;
  // Raise β geometrically from anneal_start to beta.
  bool anneal = false;
  std::optional<double> anneal_start;  // 1/N when unset
  double anneal_factor = 2.0;
  std::size_t iters_per_beta = 5;
  // Log-normal spread of the initial rows: q(c|x) ∝ exp(init_spread·ξ).
  double init_spread = 2.0;
  // Log-normal kick applied between β levels: q(c|x) ← q(c|x)·exp(noise_scale·ξ),
  // renormalized. Rows that are already confident barely move; rows near the
  // marginal are re-randomized.
  double noise_scale = 2.0;
  std::size_t restarts = 10;
  std::uint64_t seed = 0;
  // Per-restart cap on alternating steps.
  std::size_t max_total_iters = 100000;
  // Run restarts on separate threads. Results do not depend on this.
  bool parallel = true;

  void validate() const;
};

struct TraceRecord {
  std::size_t restart;
  double beta;
  // 0 is the initialization, k the model after the k-th alternating step.
  std::size_t iter;
  // 𝒢 evaluated at this record's beta.
  double objective;
  double loss;
  double mi;
};

struct OptimizerTrace {
  std::vector<TraceRecord> records;
  bool iteration_cap_hit = false;
  std::size_t best_restart = 0;
  std::size_t best_iter = 0;
  // 𝒢 of the returned model at the target beta.
  double best_objective = 0.0;
};

struct OptimizeResult {
  ClusterModel model;
  OptimizerTrace trace;
};

// βN·L̂ + |X|·Ī.
double objective(const ClusterModel& model, const EdgeDataset& data, double beta);

// One alternating projection:
//   q'(c|x) ∝ q̄(c) exp(-βN ∂L̂/∂q(c|x)),  then G' = ml_cluster_weights(q').
// Normalization happens in the log domain with per-row max subtraction.
ClusterModel alternating_step(const ClusterModel& model, const EdgeDataset& data,
                              double beta);

// β levels visited by one restart: anneal_start, ·factor, ... up to beta
// (the last level is exactly beta). Just {beta} without annealing.
std::vector<double> beta_schedule(const OptimizerConfig& config,
                                  std::size_t sample_size);

// Rows ∝ exp(spread·ξ) with ξ ~ N(0,1) i.i.d.; spread 0 gives uniform rows.
Assignment random_initial_assignment(std::size_t num_nodes, std::size_t num_clusters,
                                     double spread, std::uint64_t seed);

// q(c|x)·exp(scale·ξ), with entries floored at 1e-12 first, renormalized.
Assignment perturb_assignment(const Assignment& assignment, double scale,
                              std::mt19937_64& rng);

// Multi-restart annealed minimization of 𝒢. Returns the model with the
// smallest 𝒢 at the target beta among all iterates of all restarts.
OptimizeResult optimize(const EdgeDataset& data, const OptimizerConfig& config);

// CSV with header `restart,beta,iter,objective,loss,mi`.
void write_trace_csv(std::ostream& out, const OptimizerTrace& trace);

}  // namespace graphclust

#endif  // GRAPHCLUST_OPTIMIZER_HPP_
