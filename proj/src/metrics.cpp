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

#include "graphfolk/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "graphfolk/error.hpp"

namespace graphfolk::predict {

double accuracy_percent(std::span<const int> pred, std::span<const int> truth) {
  if (pred.size() != truth.size()) throw DataError("prediction/truth length mismatch");
  if (truth.empty()) throw DataError("accuracy of an empty set");
  std::size_t hits = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) hits += pred[i] == truth[i];
  return 100.0 * static_cast<double>(hits) / static_cast<double>(truth.size());
}

double mean_absolute_error(std::span<const double> pred, std::span<const double> truth) {
  if (pred.size() != truth.size()) throw DataError("prediction/truth length mismatch");
  if (truth.empty()) throw DataError("MAE of an empty set");
  double sum = 0.0;
  for (std::size_t i = 0; i < truth.size(); ++i) sum += std::abs(pred[i] - truth[i]);
  return sum / static_cast<double>(truth.size());
}

double pearson(std::span<const double> x, std::span<const double> y) {
  if (x.size() != y.size()) throw DataError("correlation length mismatch");
  if (x.size() < 2) throw DataError("correlation needs at least two points");
  const double n = static_cast<double>(x.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= n;
  my /= n;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double dx = x[i] - mx, dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw DataError("correlation undefined for constant input");
  return std::clamp(sxy / std::sqrt(sxx * syy), -1.0, 1.0);
}

RegressionScore evaluate_regression(std::span<const double> pred,
                                    std::span<const double> truth) {
  if (truth.size() < 2) throw DataError("regression scoring needs at least two points");
  RegressionScore score;
  score.mae = mean_absolute_error(pred, truth);
  const bool truth_constant =
      std::all_of(truth.begin(), truth.end(), [&](double v) { return v == truth[0]; });
  const bool pred_constant =
      std::all_of(pred.begin(), pred.end(), [&](double v) { return v == pred[0]; });
  if (!truth_constant && !pred_constant) score.rho = pearson(pred, truth);
  return score;
}

ConfusionMatrix misclassification_matrix(std::span<const int> pred,
                                         std::span<const int> truth) {
  if (pred.size() != truth.size()) throw DataError("prediction/truth length mismatch");
  ConfusionMatrix m{};
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (truth[i] < 1 || truth[i] > 9 || pred[i] < 1 || pred[i] > 9) {
      throw DataError("class labels must be in 1..9");
    }
    ++m[static_cast<std::size_t>(truth[i] - 1)][static_cast<std::size_t>(pred[i] - 1)];
  }
  return m;
}

double majority_baseline_percent(std::span<const int> truth) {
  if (truth.empty()) throw DataError("majority baseline of an empty set");
  std::map<int, std::size_t> counts;
  for (int c : truth) ++counts[c];
  std::size_t best = 0;
  for (const auto& [cls, n] : counts) best = std::max(best, n);
  return 100.0 * static_cast<double>(best) / static_cast<double>(truth.size());
}

}  // namespace graphfolk::predict
