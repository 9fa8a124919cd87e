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

// SkipGram with negative sampling over random-walk corpora.
//
// Each (input, context) pair drawn from a walk updates the output vectors of
// the context vertex and of the sampled negatives, and then the input
// vector of the centre vertex, by plain SGD on
//
//   loss = -log sigma(v'_pos . v_in) - sum_neg log sigma(-v'_neg . v_in).
//
// Negatives come from the corpus unigram distribution raised to 3/4.

#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "graphfolk/alias_table.hpp"
#include "graphfolk/dataset.hpp"
#include "graphfolk/graph.hpp"
#include "graphfolk/walks.hpp"

namespace graphfolk {

inline constexpr double kNoisePower = 0.75;

struct SgnsConfig {
  std::size_t dim = 32;
  std::size_t window_radius = 5;
  std::size_t negatives = 5;
  double initial_lr = 0.025;
  std::size_t epochs = 5;
  double power = kNoisePower;
  std::uint64_t seed = 0;
  // 1 = deterministic single-threaded training. More threads train
  // lock-free on disjoint corpus shards and are not reproducible.
  unsigned threads = 1;

  void validate() const;
};

// Input vectors (W) and output vectors (W') stored row-major.
class EmbeddingModel {
 public:
  EmbeddingModel(std::size_t vocab_size, std::size_t dim);

  std::size_t vocab_size() const { return vocab_; }
  std::size_t dim() const { return dim_; }

  std::span<double> input(Vertex v) { return {input_.data() + v * dim_, dim_}; }
  std::span<const double> input(Vertex v) const {
    return {input_.data() + v * dim_, dim_};
  }
  std::span<double> output(Vertex v) { return {output_.data() + v * dim_, dim_}; }
  std::span<const double> output(Vertex v) const {
    return {output_.data() + v * dim_, dim_};
  }

  const std::vector<double>& input_matrix() const { return input_; }
  const std::vector<double>& output_matrix() const { return output_; }
  bool all_finite() const;

  friend bool operator==(const EmbeddingModel&, const EmbeddingModel&) = default;

 private:
  std::size_t vocab_;
  std::size_t dim_;
  std::vector<double> input_;
  std::vector<double> output_;
};

struct NoiseDistribution {
  std::vector<double> probs;
  AliasTable sampler;
};

// probs[v] = count(v)^power / sum_u count(u)^power over vertices < vocab_size.
NoiseDistribution build_noise_distribution(const WalkCorpus& corpus,
                                           std::size_t vocab_size, double power);

// (walk[i], walk[j]) for every j != i with |i - j| <= radius, i then j
// ascending.
std::vector<std::pair<Vertex, Vertex>> extract_pairs(std::span<const Vertex> walk,
                                                     std::size_t radius);
std::size_t count_pairs(std::size_t walk_length, std::size_t radius);

// Logistic function with its argument clamped to [-30, 30].
double sigmoid(double x);

// Surrogate loss of one pair at the current parameters.
double pair_loss(const EmbeddingModel& model, Vertex input, Vertex positive,
                 std::span<const Vertex> negatives);

// One SGD step on pair_loss(). Output vectors move first; the input vector
// then moves along the gradient accumulated from the pre-step output
// vectors. Returns the loss before the step.
double sgns_pair_update(EmbeddingModel& model, Vertex input, Vertex positive,
                        std::span<const Vertex> negatives, double lr);

// W ~ U(-0.5/dim, 0.5/dim), W' = 0.
EmbeddingModel initialize_model(std::size_t vocab_size, const SgnsConfig& cfg);

struct TrainResult {
  EmbeddingModel model;
  // Mean per-pair surrogate loss on a fixed probe sample of the corpus,
  // evaluated after each epoch.
  std::vector<double> epoch_loss;
  // Running mean of the pre-update loss seen during each epoch.
  std::vector<double> online_loss;
};

// Learning rate decays linearly from initial_lr to initial_lr * 1e-4 over
// all pairs of all epochs. Negatives equal to the input or the positive are
// redrawn up to 8 times and then dropped.
TrainResult train(const WalkCorpus& corpus, std::size_t vocab_size,
                  const SgnsConfig& cfg);

// Rows of W keyed by external id, in vertex order.
predict::FeatureTable export_embeddings(const EmbeddingModel& model,
                                        const IdMap& ids);

}  // namespace graphfolk
