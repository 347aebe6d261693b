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

#include <gtest/gtest.h>

#include <cmath>
#include <map>
#include <random>
#include <sstream>

#include "oracles.hpp"

namespace graphclust {
namespace {

TEST(BinaryKlTest, Examples) {
  for (double p : {0.0, 0.1, 0.5, 0.93, 1.0}) EXPECT_EQ(binary_kl(p, p), 0.0);
  EXPECT_NEAR(binary_kl(0.0, 0.5), std::log(2.0), 1e-15);
  // Reference value from 40-digit arithmetic.
  EXPECT_NEAR(binary_kl(0.5, 0.25), 0.14384103622589046, 1e-15);
  EXPECT_TRUE(std::isinf(binary_kl(0.3, 1.0)));
  EXPECT_TRUE(std::isinf(binary_kl(0.3, 0.0)));
  EXPECT_THROW(binary_kl(1.2, 0.5), std::invalid_argument);
}

TEST(BinaryKlTest, MatchesTwoTermFormula) {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(0.001, 0.999);
  for (int k = 0; k < 200; ++k) {
    const double p = u(rng), q = u(rng);
    EXPECT_NEAR(binary_kl(p, q), oracle::binary_kl(p, q), 1e-12);
  }
}

TEST(InvKlTest, ZeroBudgetAndClosedForm) {
  EXPECT_EQ(inv_kl_upper(0.37, 0.0), 0.37);
  for (double eps : {1e-4, 0.01, 0.5, 3.0})
    EXPECT_NEAR(inv_kl_upper(0.0, eps), -std::expm1(-eps), 1e-12);
  EXPECT_EQ(inv_kl_upper(1.0, 0.2), 1.0);
  EXPECT_EQ(inv_kl_upper(0.9, 50.0), 1.0);
}

TEST(InvKlTest, RootAndMaximality) {
  std::mt19937_64 rng(2);
  std::uniform_real_distribution<double> up(0.0, 0.95), ue(1e-4, 0.5);
  for (int k = 0; k < 50; ++k) {
    const double p = up(rng), eps = ue(rng);
    const double z = inv_kl_upper(p, eps);
    ASSERT_GE(z, p);
    if (z < 1.0) EXPECT_NEAR(oracle::binary_kl(p, z), eps, 1e-9);
    EXPECT_NEAR(z, oracle::inv_kl_scan(p, eps, 1e-6), 1e-6);
  }
}

BoundInputs alphabet_example() {
  BoundInputs in;
  in.empirical_loss = 0.1;
  in.mutual_info = 0.0;
  in.num_nodes = 20;
  in.num_clusters = 1;
  in.sample_size = 500;
  in.delta = 0.05;
  in.alphabet_size = 2;
  return in;
}

TEST(FiniteAlphabetBoundTest, PlugIn) {
  const auto r = finite_alphabet_bound(alphabet_example());
  const double complexity =
      (std::log(20.0) + std::log(2.0) + 0.5 * std::log(2000.0) - std::log(0.05)) / 500.0;
  EXPECT_NEAR(r.complexity, complexity, 1e-15);
  EXPECT_NEAR(r.complexity, 0.020970125914877937, 1e-15);
  // Independent 40-digit bisection of the inverse kl.
  EXPECT_NEAR(r.expected_loss_bound, 0.17231425555870974, 1e-10);
  EXPECT_EQ(r.correction, 0.0);
  EXPECT_EQ(r.loss_term, 0.1);
}

TEST(FiniteAlphabetBoundTest, Monotonicity) {
  auto in = alphabet_example();
  in.num_clusters = 3;
  in.mutual_info = 0.2;
  double previous = 1.0;
  for (std::size_t n : {500u, 5000u, 50000u, 500000u, 50000000u}) {
    in.sample_size = n;
    const double b = finite_alphabet_bound(in).expected_loss_bound;
    EXPECT_LT(b, previous);
    EXPECT_GT(b, in.empirical_loss);
    previous = b;
  }
  EXPECT_LT(previous - in.empirical_loss, 1e-3);

  in.sample_size = 5000;
  const double low = finite_alphabet_bound(in).expected_loss_bound;
  in.mutual_info = 0.9;
  EXPECT_GT(finite_alphabet_bound(in).expected_loss_bound, low);
}

TEST(QuantizedBoundTest, MatchesFiniteAlphabetTermByTerm) {
  auto in = alphabet_example();
  in.num_clusters = 2;
  in.mutual_info = 0.3;
  in.alphabet_size = 1000.0;
  const auto finite = finite_alphabet_bound(in);
  in.alphabet_size.reset();
  in.quantization = 1e-3;
  const auto quant = quantized_bound(in);
  EXPECT_NEAR(quant.complexity, finite.complexity, 1e-15);
  EXPECT_NEAR(quant.correction, 1e-3 + 0.25e-6, 1e-18);
  EXPECT_NEAR(quant.loss_term, 0.1 + quant.correction, 1e-15);
  EXPECT_NEAR(quant.expected_loss_bound,
              inv_kl_upper(quant.loss_term, quant.complexity) + quant.correction, 1e-15);
}

TEST(QuantizedBoundTest, TwoStepSizes) {
  // Reference numbers from 40-digit arithmetic of the formula.
  BoundInputs in;
  in.empirical_loss = 0.1;
  in.mutual_info = 0.8;
  in.num_nodes = 50;
  in.num_clusters = 3;
  in.sample_size = 2000;
  in.quantization = 0.0225;
  const auto coarse = quantized_bound(in);
  EXPECT_NEAR(coarse.complexity, 0.046686779714057641, 1e-14);
  EXPECT_NEAR(coarse.correction, 0.0226265625, 1e-16);
  EXPECT_NEAR(coarse.expected_loss_bound, 0.26726916720650144, 1e-10);

  in.quantization = 0.001;
  const auto fine = quantized_bound(in);
  EXPECT_LT(fine.loss_term, coarse.loss_term);
  EXPECT_GT(fine.complexity, coarse.complexity);
  EXPECT_NEAR(fine.complexity,
              (50 * 0.8 + 3 * std::log(50.0) - 9 * std::log(0.001) +
               0.5 * std::log(8000.0) - std::log(0.05)) / 2000.0,
              1e-15);
}

TEST(QuantizedBoundTest, DefaultRuleAndCap) {
  EXPECT_DOUBLE_EQ(default_quantization(4, 1000000), 8e-5);
  EXPECT_DOUBLE_EQ(default_quantization(1, 1), 0.5);
  BoundInputs in;
  in.empirical_loss = 0.9;
  in.mutual_info = 0.0;
  in.num_nodes = 10;
  in.num_clusters = 2;
  in.sample_size = 10;
  in.quantization = 0.4;
  const auto r = quantized_bound(in);
  EXPECT_EQ(r.loss_term, 1.0);
  EXPECT_EQ(r.expected_loss_bound, 1.0);
}

TEST(ComputeBoundTest, DispatchAndValidation) {
  auto in = alphabet_example();
  EXPECT_EQ(compute_bound(in).expected_loss_bound,
            finite_alphabet_bound(in).expected_loss_bound);
  in.quantization = 0.01;
  EXPECT_THROW(compute_bound(in), std::invalid_argument);
  in.alphabet_size.reset();
  EXPECT_EQ(compute_bound(in).expected_loss_bound, quantized_bound(in).expected_loss_bound);

  auto bad = alphabet_example();
  bad.mutual_info = 0.5;  // exceeds ln|C| = 0
  EXPECT_THROW(compute_bound(bad), std::invalid_argument);
  bad = alphabet_example();
  bad.delta = 1.0;
  EXPECT_THROW(compute_bound(bad), std::invalid_argument);
  bad = alphabet_example();
  bad.empirical_loss = 1.5;
  EXPECT_THROW(compute_bound(bad), std::invalid_argument);
  bad = alphabet_example();
  bad.alphabet_size = 1;
  EXPECT_THROW(compute_bound(bad), std::invalid_argument);
}

TEST(BoundReportTest, KeyValueLines) {
  std::ostringstream out;
  write_bound_report(out, finite_alphabet_bound(alphabet_example()));
  std::istringstream in(out.str());
  std::string line;
  std::map<std::string, double> values;
  while (std::getline(in, line)) {
    const auto eq = line.find('=');
    ASSERT_NE(eq, std::string::npos) << line;
    values[line.substr(0, eq)] = std::stod(line.substr(eq + 1));
  }
  // Values are written with enough digits to read back exactly.
  EXPECT_EQ(values.at("empirical_loss"), 0.1);
  EXPECT_EQ(values.at("alphabet_size"), 2.0);
  EXPECT_EQ(values.at("expected_loss_bound"),
            finite_alphabet_bound(alphabet_example()).expected_loss_bound);
}

}  // namespace
}  // namespace graphclust
