// Copyright 2026 The graphfolk Authors. All Rights Reserved.
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

#include <cmath>
#include <numeric>
#include <vector>

#include "doctest.h"
#include "graphfolk/error.hpp"
#include "graphfolk/metrics.hpp"

using namespace graphfolk;
using namespace graphfolk::predict;

TEST_CASE("accuracy") {
  const std::vector<int> truth{1, 2, 3, 3};
  CHECK(accuracy_percent(truth, truth) == 100.0);
  CHECK(accuracy_percent(std::vector<int>{2, 3, 1, 1}, truth) == 0.0);
  CHECK(accuracy_percent(std::vector<int>{1, 2, 1, 1}, truth) == 50.0);
  CHECK_THROWS_AS(accuracy_percent(std::vector<int>{1}, truth), DataError);

  // Relabelling both sides consistently changes nothing.
  const std::vector<int> pred{1, 3, 3, 2};
  auto relabel = [](std::vector<int> v) {
    for (int& c : v) c = 10 - c;
    return v;
  };
  CHECK(accuracy_percent(relabel(pred), relabel(truth)) == accuracy_percent(pred, truth));
}

TEST_CASE("majority baseline on the reference class counts") {
  const int counts[9] = {461, 1615, 950, 168, 782, 270, 56, 192, 131};
  std::vector<int> truth;
  for (int c = 0; c < 9; ++c) truth.insert(truth.end(), static_cast<std::size_t>(counts[c]), c + 1);
  REQUIRE(truth.size() == 4625);
  const double expected = 100.0 * 1615.0 / 4625.0;
  CHECK(majority_baseline_percent(truth) == doctest::Approx(expected));
  CHECK(majority_baseline_percent(truth) == doctest::Approx(34.92).epsilon(1e-3));
  const std::vector<int> always_two(truth.size(), 2);
  CHECK(accuracy_percent(always_two, truth) == doctest::Approx(expected));
}

TEST_CASE("regression scores") {
  const std::vector<double> truth{12000, 18000, 25000, 31000, 40000,
                                  22000, 55000, 61000, 15000, 70000};
  RegressionScore perfect = evaluate_regression(truth, truth);
  CHECK(perfect.mae == 0.0);
  CHECK(*perfect.rho == doctest::Approx(1.0));

  std::vector<double> flipped;
  for (double t : truth) flipped.push_back(90000.0 - t);
  CHECK(*evaluate_regression(flipped, truth).rho == doctest::Approx(-1.0));

  const double mean = std::accumulate(truth.begin(), truth.end(), 0.0) / 10.0;
  double mad = 0.0;
  for (double t : truth) mad += std::abs(t - mean);
  mad /= 10.0;
  const std::vector<double> constant(10, mean);
  RegressionScore flat = evaluate_regression(constant, truth);
  CHECK(flat.mae == doctest::Approx(mad));
  CHECK_FALSE(flat.rho.has_value());

  const std::vector<double> same(10, 5.0);
  RegressionScore degenerate = evaluate_regression(truth, same);
  CHECK_FALSE(degenerate.rho.has_value());
  CHECK(degenerate.mae > 0.0);
  CHECK_THROWS_AS(pearson(truth, same), DataError);
  CHECK_THROWS_AS(evaluate_regression(std::vector<double>{1.0}, std::vector<double>{1.0}),
                  DataError);
}

TEST_CASE("regression invariances") {
  const std::vector<double> truth{3, 9, 4, 1, 7, 6};
  const std::vector<double> pred{2.5, 8, 5, 2, 6, 6.5};
  const RegressionScore base = evaluate_regression(pred, truth);
  std::vector<double> affine;
  for (double p : pred) affine.push_back(3.0 * p + 100.0);
  CHECK(*evaluate_regression(affine, truth).rho == doctest::Approx(*base.rho));

  std::vector<double> sp, st;
  for (double p : pred) sp.push_back(4.0 * p);
  for (double t : truth) st.push_back(4.0 * t);
  CHECK(evaluate_regression(sp, st).mae == doctest::Approx(4.0 * base.mae));
}

TEST_CASE("misclassification matrix") {
  const std::vector<int> truth{1, 1, 2, 3, 3, 3, 9};
  const ConfusionMatrix diag = misclassification_matrix(truth, truth);
  std::size_t total = 0;
  for (int i = 0; i < 9; ++i)
    for (int j = 0; j < 9; ++j) {
      if (i != j) CHECK(diag[i][j] == 0);
      total += diag[i][j];
    }
  CHECK(total == truth.size());

  const std::vector<int> pred{1, 2, 2, 3, 2, 4, 8};
  const ConfusionMatrix m = misclassification_matrix(pred, truth);
  CHECK(m[0][0] == 1);
  CHECK(m[0][1] == 1);
  CHECK(m[2][1] == 1);
  CHECK(m[2][3] == 1);
  CHECK(m[8][7] == 1);
  const std::size_t support3 = m[2][0] + m[2][1] + m[2][2] + m[2][3] + m[2][4] + m[2][5] +
                               m[2][6] + m[2][7] + m[2][8];
  CHECK(support3 == 3);
  CHECK_THROWS_AS(misclassification_matrix(std::vector<int>{0}, std::vector<int>{1}),
                  DataError);
}
