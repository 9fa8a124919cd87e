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

#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>

namespace graphfolk::predict {

// 100 * matches / total. Throws DataError on empty or mismatched input.
double accuracy_percent(std::span<const int> pred, std::span<const int> truth);

double mean_absolute_error(std::span<const double> pred, std::span<const double> truth);

// Throws DataError when either side is constant.
double pearson(std::span<const double> x, std::span<const double> y);

struct RegressionScore {
  double mae = 0.0;
  std::optional<double> rho;  // empty when the truth is constant
};

// Needs at least two points.
RegressionScore evaluate_regression(std::span<const double> pred,
                                    std::span<const double> truth);

// Entry [t-1][p-1] counts samples of true class t predicted as p.
using ConfusionMatrix = std::array<std::array<std::size_t, 9>, 9>;

ConfusionMatrix misclassification_matrix(std::span<const int> pred,
                                         std::span<const int> truth);

// Accuracy of always predicting the most frequent class of `truth`.
double majority_baseline_percent(std::span<const int> truth);

}  // namespace graphfolk::predict
