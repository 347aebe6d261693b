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

#ifndef GRAPHCLUST_BOUND_HPP_
#define GRAPHCLUST_BOUND_HPP_

#include <cstddef>
#include <iosfwd>
#include <optional>

namespace graphclust {

// kl(p‖q) between Bernoulli(p) and Bernoulli(q) in nats, with 0·ln 0 = 0.
// Returns +infinity when q is 0 or 1 and p differs from it.
double binary_kl(double p, double q);

// Largest z in [p_hat, 1] with binary_kl(p_hat, z) <= epsilon, by bisection
// on [p_hat, 1 - 1e-15]. Returns 1 when the budget exceeds kl at the upper
// end of the bracket.
double inv_kl_upper(double p_hat, double epsilon);

struct BoundInputs {
  double empirical_loss = 0.0;
  double mutual_info = 0.0;  // nats
  std::size_t num_nodes = 0;
  std::size_t num_clusters = 0;
  std::size_t sample_size = 0;
  double delta = 0.05;
  // Set exactly one: the quantization step Δ (continuous weights) or the
  // number of distinct weights |W| (finite alphabet).
  std::optional<double> quantization;
  std::optional<double> alphabet_size;
};

struct BoundReport {
  BoundInputs inputs;
  // Budget on kl(L̂‖L): the complexity term divided by N.
  double complexity = 0.0;
  // First argument passed to the inverse kl (L̂, or L̂ + Δ + Δ²/4 capped at 1).
  double loss_term = 0.0;
  // Δ + Δ²/4 for the quantized bound, 0 otherwise.
  double correction = 0.0;
  double expected_loss_bound = 0.0;
};

// Bound for a finite weight alphabet:
//   kl(L̂‖L) <= (|X| Ī + |C| ln|X| + |C|² ln|W| + ½ ln(4N) - ln δ) / N.
BoundReport finite_alphabet_bound(const BoundInputs& inputs);

// Bound for continuous weights rounded to a grid of step Δ:
//   L <= kl⁻¹(L̂ + Δ + Δ²/4, (|X| Ī + |C| ln|X| - |C|² ln Δ + ½ ln(4N/δ²)) / N)
//        + Δ + Δ²/4, capped at 1.
BoundReport quantized_bound(const BoundInputs& inputs);

// Δ = 5|C|²/N clamped into [1e-9, 0.5].
double default_quantization(std::size_t num_clusters, std::size_t sample_size);

// Dispatches on which of quantization / alphabet_size is set.
BoundReport compute_bound(const BoundInputs& inputs);

// One `key=value` line per field, inputs first.
void write_bound_report(std::ostream& out, const BoundReport& report);

}  // namespace graphclust

#endif  // GRAPHCLUST_BOUND_HPP_
