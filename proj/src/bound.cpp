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

#include "graphclust/bound.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>

namespace graphclust {

namespace {

constexpr double kBracketTop = 1.0 - 1e-15;
constexpr int kMaxBisections = 200;

void validate(const BoundInputs& in) {
  if (!(in.empirical_loss >= 0.0 && in.empirical_loss <= 1.0)) {
    throw std::invalid_argument("empirical loss must lie in [0,1]");
  }
  if (in.num_nodes < 1 || in.num_clusters < 1) {
    throw std::invalid_argument("|X| and |C| must be positive");
  }
  const double max_info = std::log(static_cast<double>(in.num_clusters));
  if (!(in.mutual_info >= 0.0 && in.mutual_info <= max_info + 1e-9)) {
    throw std::invalid_argument("mutual information must lie in [0, ln|C|]");
  }
  if (in.sample_size < 1) throw std::invalid_argument("sample size must be >= 1");
  if (!(in.delta > 0.0 && in.delta < 1.0)) {
    throw std::invalid_argument("delta must lie in (0,1)");
  }
}

// |X| Ī + |C| ln|X| + ½ ln(4N) - ln δ, shared by both bounds.
double base_complexity(const BoundInputs& in) {
  const double nodes = static_cast<double>(in.num_nodes);
  const double clusters = static_cast<double>(in.num_clusters);
  return nodes * in.mutual_info + clusters * std::log(nodes) +
         0.5 * std::log(4.0 * static_cast<double>(in.sample_size)) -
         std::log(in.delta);
}

}  // namespace

double binary_kl(double p, double q) {
  if (!(p >= 0.0 && p <= 1.0) || !(q >= 0.0 && q <= 1.0)) {
    throw std::invalid_argument("binary_kl arguments must lie in [0,1]");
  }
  if (q == 0.0 || q == 1.0) {
    return p == q ? 0.0 : std::numeric_limits<double>::infinity();
  }
  double kl = 0.0;
  if (p > 0.0) kl += p * std::log(p / q);
  if (p < 1.0) kl += (1.0 - p) * (std::log1p(-p) - std::log1p(-q));
  return std::max(0.0, kl);
}

double inv_kl_upper(double p_hat, double epsilon) {
  if (!(p_hat >= 0.0 && p_hat <= 1.0)) {
    throw std::invalid_argument("inv_kl_upper: p_hat must lie in [0,1]");
  }
  if (std::isnan(epsilon)) throw std::invalid_argument("inv_kl_upper: epsilon is NaN");
  if (p_hat >= kBracketTop) return 1.0;
  if (epsilon <= 0.0) return p_hat;
  if (binary_kl(p_hat, kBracketTop) <= epsilon) return 1.0;
  // Invariant: kl(p_hat, lo) <= epsilon < kl(p_hat, hi).
  double lo = p_hat;
  double hi = kBracketTop;
  for (int it = 0; it < kMaxBisections; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (binary_kl(p_hat, mid) <= epsilon) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return lo;
}

BoundReport finite_alphabet_bound(const BoundInputs& inputs) {
  validate(inputs);
  if (!inputs.alphabet_size || !(*inputs.alphabet_size >= 2.0)) {
    throw std::invalid_argument("finite-alphabet bound needs |W| >= 2");
  }
  const double clusters = static_cast<double>(inputs.num_clusters);
  BoundReport report;
  report.inputs = inputs;
  report.complexity = (base_complexity(inputs) +
                       clusters * clusters * std::log(*inputs.alphabet_size)) /
                      static_cast<double>(inputs.sample_size);
  report.loss_term = inputs.empirical_loss;
  report.expected_loss_bound = inv_kl_upper(report.loss_term, report.complexity);
  return report;
}

BoundReport quantized_bound(const BoundInputs& inputs) {
  validate(inputs);
  if (!inputs.quantization || !(*inputs.quantization > 0.0 && *inputs.quantization < 1.0)) {
    throw std::invalid_argument("quantized bound needs 0 < delta_q < 1");
  }
  const double step = *inputs.quantization;
  const double clusters = static_cast<double>(inputs.num_clusters);
  BoundReport report;
  report.inputs = inputs;
  report.complexity = (base_complexity(inputs) - clusters * clusters * std::log(step)) /
                      static_cast<double>(inputs.sample_size);
  report.correction = step + 0.25 * step * step;
  report.loss_term = std::min(1.0, inputs.empirical_loss + report.correction);
  report.expected_loss_bound = std::min(
      1.0, inv_kl_upper(report.loss_term, report.complexity) + report.correction);
  return report;
}

double default_quantization(std::size_t num_clusters, std::size_t sample_size) {
  if (sample_size < 1) throw std::invalid_argument("sample size must be >= 1");
  const double c = static_cast<double>(num_clusters);
  return std::clamp(5.0 * c * c / static_cast<double>(sample_size), 1e-9, 0.5);
}

BoundReport compute_bound(const BoundInputs& inputs) {
  if (inputs.quantization.has_value() == inputs.alphabet_size.has_value()) {
    throw std::invalid_argument("set exactly one of quantization and alphabet size");
  }
  return inputs.quantization ? quantized_bound(inputs) : finite_alphabet_bound(inputs);
}

void write_bound_report(std::ostream& out, const BoundReport& report) {
  const auto precision = out.precision(std::numeric_limits<double>::max_digits10);
  const auto& in = report.inputs;
  out << "empirical_loss=" << in.empirical_loss << '\n'
      << "mutual_info=" << in.mutual_info << '\n'
      << "num_nodes=" << in.num_nodes << '\n'
      << "num_clusters=" << in.num_clusters << '\n'
      << "sample_size=" << in.sample_size << '\n'
      << "delta=" << in.delta << '\n';
  if (in.quantization) out << "quantization=" << *in.quantization << '\n';
  if (in.alphabet_size) out << "alphabet_size=" << *in.alphabet_size << '\n';
  out << "complexity=" << report.complexity << '\n'
      << "loss_term=" << report.loss_term << '\n'
      << "correction=" << report.correction << '\n'
      << "expected_loss_bound=" << report.expected_loss_bound << '\n';
  out.precision(precision);
}

}  // namespace graphclust
