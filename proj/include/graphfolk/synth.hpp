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

// Stochastic block model graphs with block-correlated occupational class and
// income labels, used as ground truth for end-to-end runs.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <string_view>
#include <vector>

#include "graphfolk/dataset.hpp"
#include "graphfolk/graph.hpp"

namespace graphfolk::synth {

struct BlockIncome {
  double mean = 30000.0;
  double stddev = 3000.0;
};

struct SbmSpec {
  std::vector<std::size_t> block_sizes;
  double p_in = 0.1;
  double p_out = 0.005;
  // Edge probability between blocks b and b+1; p_out when unset.
  std::optional<double> p_adjacent;
  std::vector<int> class_of_block;
  std::vector<BlockIncome> income_of_block;
  std::uint64_t seed = 0;

  // With more than one group every vertex also draws a latent topic group,
  // independent of its block, and its class becomes
  // (class_of_block - 1) * topic_groups + group + 1.
  std::size_t topic_groups = 1;
  // Width of the emitted topic feature matrix (0 = none). Rows are the
  // vertex's group centre plus unit Gaussian noise.
  std::size_t topics_dim = 0;
  double topic_separation = 1.0;  // stddev of the group centres

  // Throws ConfigError.
  void validate() const;
  std::size_t num_vertices() const;
};

// Occupational class counts of the reference survey sample, classes 1..9.
inline constexpr std::size_t kReferenceClassCounts[9] = {461, 1615, 950, 168, 782,
                                                          270, 56,   192, 131};

// Sizes proportional to kReferenceClassCounts summing exactly to `total`
// (largest remainder).
std::vector<std::size_t> reference_block_sizes(std::size_t total);

// Nine blocks with reference proportions, classes 1..9, mean incomes spread
// linearly from 80k (class 1) down to 15k (class 9), stddev 3k.
SbmSpec reference_spec(std::size_t total, double p_in, double p_out, std::uint64_t seed);

struct SyntheticData {
  EdgeList edges;  // undirected, each edge once as (u_i, u_j) with i < j
  predict::LabelTable labels;
  std::vector<std::size_t> block_of;
  std::vector<std::size_t> topic_group_of;
  predict::FeatureTable topics;  // empty unless topics_dim > 0
};

// Vertex i is named "u<i>"; vertices are laid out block by block. Income is
// Normal(mean, stddev) clipped below at 1000.
SyntheticData generate_sbm(const SbmSpec& spec);

// Flat "key = value" file; lists are comma separated. Keys: total |
// block_sizes, p_in, p_out, p_adjacent, class_of_block, income_mean,
// income_std, seed, topic_groups, topics_dim, topic_separation.
SbmSpec parse_sbm_spec(std::string_view text, std::string_view source = "<spec>");
SbmSpec load_sbm_spec(const std::filesystem::path& path);

}  // namespace graphfolk::synth
