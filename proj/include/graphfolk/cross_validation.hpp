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

// Nested k-fold cross-validation: inner folds pick hyperparameters, outer
// folds score the refitted model.

#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "graphfolk/dataset.hpp"
#include "graphfolk/metrics.hpp"

namespace graphfolk::predict {

using IndexSet = std::vector<std::size_t>;

struct FoldPlan {
  std::vector<IndexSet> outer_test;
  // inner_validation[k][j] partitions the training part of outer fold k.
  std::vector<std::vector<IndexSet>> inner_validation;
  std::size_t num_samples = 0;
  std::uint64_t seed = 0;

  IndexSet outer_train(std::size_t k) const;
  IndexSet inner_train(std::size_t k, std::size_t j) const;
};

// Splits `indices` into k folds. With non-empty `strata` (one entry per
// sample, indexed by sample id) every stratum is dealt round-robin so each
// fold holds floor or ceil of its share. Folds come back sorted.
std::vector<IndexSet> make_folds(const IndexSet& indices, std::span<const int> strata,
                                 std::size_t k, std::uint64_t seed);

// Throws DataError when n < outer_k or an outer training part is smaller
// than inner_k.
FoldPlan make_fold_plan(std::size_t n, std::span<const int> strata,
                        std::size_t outer_k, std::size_t inner_k, std::uint64_t seed);

enum class Learner { kLogistic, kRidge, kKernelRidge };

const char* learner_name(Learner learner);
const char* task_name(Task task);

struct GridPoint {
  std::size_t feature_set = 0;
  double l2 = 1.0;
  double gamma = 0.0;  // kernel ridge only
};

std::vector<double> default_l2_grid();  // 1e-3, 1e-2, ..., 1e2

// Cartesian product over feature sets and l2; kernel ridge adds
// gamma = m / dim for m in {0.1, 1, 10}, dim being the feature-set width.
std::vector<GridPoint> make_grid(Learner learner, std::span<const std::size_t> feature_dims,
                                 std::span<const double> l2_values);

struct FoldResult {
  std::size_t fold = 0;
  std::size_t test_size = 0;
  GridPoint chosen;
  double inner_score = 0.0;  // mean inner accuracy (%) or mean inner MAE
  double accuracy = 0.0;
  double mae = 0.0;
  std::optional<double> rho;
};

struct EvalReport {
  Task task = Task::kClassification;
  Learner learner = Learner::kLogistic;
  std::vector<std::string> feature_set_names;
  std::vector<FoldResult> folds;

  // Out-of-fold prediction for every sample.
  std::vector<int> predicted_class;
  std::vector<double> predicted_value;

  double accuracy_mean = 0.0;    // primary for classification
  double accuracy_pooled = 0.0;
  double majority_baseline = 0.0;
  ConfusionMatrix confusion{};

  double mae_pooled = 0.0;       // primary for regression
  double mae_fold_mean = 0.0;
  std::optional<double> rho_pooled;
  double mae_mean_predictor = 0.0;  // train-mean baseline, pooled
};

struct CvOptions {
  unsigned threads = 1;
};

// `candidates` are alternative feature matrices for the same samples and
// labels (e.g. embeddings of several dimensionalities); GridPoint
// selects among them. Features are z-scored with training-part statistics
// inside every fit. Throws ConfigError on an empty grid and DataError when
// fewer than 20 samples are given.
EvalReport nested_cv(std::span<const LabeledDataset> candidates, Task task,
                     Learner learner, std::span<const GridPoint> grid,
                     const FoldPlan& plan, const CvOptions& options = {});

EvalReport nested_cv(const LabeledDataset& data, Task task, Learner learner,
                     std::span<const GridPoint> grid, const FoldPlan& plan,
                     const CvOptions& options = {});

// One JSON object per line: a "fold" record per outer fold, then one
// "aggregate" record.
std::string report_to_jsonl(const EvalReport& report);
std::string report_to_table(const EvalReport& report);

}  // namespace graphfolk::predict
