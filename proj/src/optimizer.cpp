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

#include "graphclust/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <ostream>
#include <random>
#include <stdexcept>

namespace graphclust {

namespace {

constexpr double kNoiseFloor = 1e-12;

struct RestartResult {
  std::vector<TraceRecord> records;
  std::optional<ClusterModel> best;
  double best_objective = std::numeric_limits<double>::infinity();
  std::size_t best_iter = 0;
  bool cap_hit = false;
};

RestartResult run_restart(const EdgeDataset& data, const OptimizerConfig& config,
                          const std::vector<double>& schedule, std::size_t restart) {
  RestartResult result;
  const std::uint64_t seed = config.seed + restart;
  std::mt19937_64 rng(seed);
  const double n = static_cast<double>(data.size());
  const double nodes = static_cast<double>(data.num_nodes());

  auto initial = random_initial_assignment(data.num_nodes(), config.num_clusters,
                                          config.init_spread, seed);
  auto weights = ml_cluster_weights(initial, data);
  ClusterModel model(std::move(initial), std::move(weights), data.symmetric());

  std::size_t iter = 0;
  auto record = [&](double beta) {
    const double loss = empirical_loss(model, data);
    const double mi = mutual_information(model.assignment);
    result.records.push_back({restart, beta, iter, beta * n * loss + nodes * mi, loss, mi});
    const double target = config.beta * n * loss + nodes * mi;
    if (target < result.best_objective) {
      result.best_objective = target;
      result.best_iter = iter;
      result.best = model;
    }
  };

  record(schedule.front());
  for (std::size_t level = 0; level < schedule.size(); ++level) {
    const double beta = schedule[level];
    for (std::size_t t = 0; t < config.iters_per_beta; ++t) {
      if (iter >= config.max_total_iters) {
        result.cap_hit = true;
        return result;
      }
      model = alternating_step(model, data, beta);
      ++iter;
      record(beta);
    }
    if (level + 1 < schedule.size() && config.noise_scale > 0.0) {
      auto noisy = perturb_assignment(model.assignment, config.noise_scale, rng);
      auto refit = ml_cluster_weights(noisy, data);
      model = ClusterModel(std::move(noisy), std::move(refit), data.symmetric());
    }
  }
  return result;
}

}  // namespace

void OptimizerConfig::validate() const {
  if (!(beta >= 0.0) || !std::isfinite(beta)) {
    throw std::invalid_argument("beta must be finite and >= 0");
  }
  if (num_clusters < 1) throw std::invalid_argument("need at least one cluster");
  if (anneal_start && !(*anneal_start > 0.0)) {
    throw std::invalid_argument("anneal start must be positive");
  }
  if (!(anneal_factor > 1.0)) throw std::invalid_argument("anneal factor must exceed 1");
  if (iters_per_beta < 1) throw std::invalid_argument("iters_per_beta must be >= 1");
  if (!(noise_scale >= 0.0) || !std::isfinite(noise_scale)) {
    throw std::invalid_argument("noise scale must be finite and >= 0");
  }
  if (!(init_spread >= 0.0) || !std::isfinite(init_spread)) {
    throw std::invalid_argument("init spread must be finite and >= 0");
  }
  if (restarts < 1) throw std::invalid_argument("restarts must be >= 1");
  if (max_total_iters < 1) throw std::invalid_argument("max_total_iters must be >= 1");
}

double objective(const ClusterModel& model, const EdgeDataset& data, double beta) {
  return beta * static_cast<double>(data.size()) * empirical_loss(model, data) +
         static_cast<double>(model.num_nodes()) * mutual_information(model.assignment);
}

ClusterModel alternating_step(const ClusterModel& model, const EdgeDataset& data,
                              double beta) {
  const Eigen::VectorXd marginal = model.assignment.marginal();
  const Matrix grad = loss_gradient(model, data);
  const double scale = beta * static_cast<double>(data.size());
  Matrix q(grad.rows(), grad.cols());
  for (Eigen::Index x = 0; x < q.rows(); ++x) {
    double row_max = -std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < q.cols(); ++c) {
      const double logit = marginal(c) > 0.0
                               ? std::log(marginal(c)) - scale * grad(x, c)
                               : -std::numeric_limits<double>::infinity();
      if (std::isnan(logit)) throw std::domain_error("NaN in assignment update");
      q(x, c) = logit;
      row_max = std::max(row_max, logit);
    }
    if (!std::isfinite(row_max)) {
      throw std::domain_error("assignment row " + std::to_string(x) +
                              " lost all mass");
    }
    double sum = 0.0;
    for (Eigen::Index c = 0; c < q.cols(); ++c) {
      q(x, c) = std::exp(q(x, c) - row_max);
      sum += q(x, c);
    }
    q.row(x) /= sum;
  }
  Assignment next(std::move(q));
  auto weights = ml_cluster_weights(next, data);
  return ClusterModel(std::move(next), std::move(weights), data.symmetric());
}

std::vector<double> beta_schedule(const OptimizerConfig& config,
                                  std::size_t sample_size) {
  config.validate();
  if (!config.anneal) return {config.beta};
  if (sample_size < 1) throw std::invalid_argument("sample size must be >= 1");
  double level = config.anneal_start.value_or(1.0 / static_cast<double>(sample_size));
  std::vector<double> schedule;
  while (level < config.beta * (1.0 - 1e-12)) {
    schedule.push_back(level);
    level *= config.anneal_factor;
  }
  schedule.push_back(config.beta);
  return schedule;
}

Assignment random_initial_assignment(std::size_t num_nodes, std::size_t num_clusters,
                                     double spread, std::uint64_t seed) {
  // Seeded apart from the restart's main stream so the kicks do not replay
  // the initial draws.
  std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
  return perturb_assignment(Assignment::uniform(num_nodes, num_clusters), spread, rng);
}

Assignment perturb_assignment(const Assignment& assignment, double scale,
                              std::mt19937_64& rng) {
  if (scale == 0.0) return assignment;
  Matrix q = assignment.matrix();
  std::normal_distribution<double> noise(0.0, scale);
  for (Eigen::Index x = 0; x < q.rows(); ++x) {
    // Work in logs and subtract the row maximum so large scales cannot
    // overflow.
    double row_max = -std::numeric_limits<double>::infinity();
    for (Eigen::Index c = 0; c < q.cols(); ++c) {
      q(x, c) = std::log(std::max(kNoiseFloor, q(x, c))) + noise(rng);
      row_max = std::max(row_max, q(x, c));
    }
    for (Eigen::Index c = 0; c < q.cols(); ++c) q(x, c) = std::exp(q(x, c) - row_max);
  }
  return Assignment::normalized(std::move(q));
}

OptimizeResult optimize(const EdgeDataset& data, const OptimizerConfig& config) {
  config.validate();
  if (data.empty()) throw DataError("cannot optimize on an empty dataset");
  const auto schedule = beta_schedule(config, data.size());

  std::vector<RestartResult> results(config.restarts);
  if (config.parallel && config.restarts > 1) {
    std::vector<std::future<RestartResult>> pending;
    pending.reserve(config.restarts);
    for (std::size_t r = 0; r < config.restarts; ++r) {
      pending.push_back(std::async(std::launch::async, run_restart, std::cref(data),
                                   std::cref(config), std::cref(schedule), r));
    }
    for (std::size_t r = 0; r < config.restarts; ++r) results[r] = pending[r].get();
  } else {
    for (std::size_t r = 0; r < config.restarts; ++r) {
      results[r] = run_restart(data, config, schedule, r);
    }
  }

  OptimizerTrace trace;
  std::size_t best = 0;
  for (std::size_t r = 0; r < results.size(); ++r) {
    trace.records.insert(trace.records.end(), results[r].records.begin(),
                         results[r].records.end());
    trace.iteration_cap_hit = trace.iteration_cap_hit || results[r].cap_hit;
    // Strict comparison keeps the lowest restart index on ties.
    if (results[r].best_objective < results[best].best_objective) best = r;
  }
  trace.best_restart = best;
  trace.best_iter = results[best].best_iter;
  trace.best_objective = results[best].best_objective;
  return {std::move(*results[best].best), std::move(trace)};
}

void write_trace_csv(std::ostream& out, const OptimizerTrace& trace) {
  const auto precision = out.precision(std::numeric_limits<double>::max_digits10);
  out << "restart,beta,iter,objective,loss,mi\n";
  for (const auto& r : trace.records) {
    out << r.restart << ',' << r.beta << ',' << r.iter << ',' << r.objective << ','
        << r.loss << ',' << r.mi << '\n';
  }
  out.precision(precision);
}

}  // namespace graphclust
