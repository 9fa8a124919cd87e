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

// Labelled users and dense per-user feature matrices.

#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace graphfolk::predict {

// Row i of `values` belongs to ids[i].
//
// Text format (shared by embedding export and external feature files such
// as precomputed topic vectors): first line "<rows> <cols>", then one line
// per row "<id> <v1> ... <vcols>".
struct FeatureTable {
  std::vector<std::string> ids;
  Eigen::MatrixXd values;

  std::size_t rows() const { return ids.size(); }
  std::size_t cols() const { return static_cast<std::size_t>(values.cols()); }
};

FeatureTable load_feature_table(const std::filesystem::path& path);
void save_feature_table(const std::filesystem::path& path, const FeatureTable& table);

// Column-wise concatenation with rows aligned by id, in `a`'s row order. A
// table with no columns acts as the identity. Throws DataError naming the
// ids that are not present in both tables.
FeatureTable concat_features(const FeatureTable& a, const FeatureTable& b);

inline constexpr int kNumClasses = 9;

struct LabelRow {
  std::string id;
  std::optional<int> occ_class;  // 1..9
  std::optional<double> income;  // GBP per year, > 0
};

using LabelTable = std::vector<LabelRow>;

// CSV with header `id,occ_class,income`; empty cells mean "absent".
LabelTable load_labels(const std::filesystem::path& path);
void save_labels(const std::filesystem::path& path, const LabelTable& labels);

enum class Task { kClassification, kRegression };

// Rows that have both features and the label needed by `task`, in feature
// table order.
struct LabeledDataset {
  std::vector<std::string> ids;
  Eigen::MatrixXd features;
  std::vector<int> occ_class;   // filled for classification
  std::vector<double> income;   // filled for regression

  std::size_t size() const { return ids.size(); }
};

struct JoinStats {
  std::size_t labels_without_features = 0;
  std::size_t features_without_label = 0;
};

LabeledDataset join_labels(const FeatureTable& features, const LabelTable& labels,
                           Task task, JoinStats* stats = nullptr);

}  // namespace graphfolk::predict
