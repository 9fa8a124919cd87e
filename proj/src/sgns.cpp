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

#include "graphfolk/sgns.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <thread>

#include "graphfolk/error.hpp"
#include "graphfolk/rng.hpp"
#include "graphfolk/simd.hpp"

namespace graphfolk {
namespace {

constexpr double kMinLrFraction = 1e-4;
constexpr int kNegativeRedraws = 8;
constexpr std::size_t kProbePairs = 100000;
constexpr std::uint64_t kProbeStream = ~std::uint64_t{0};

void draw_negatives(const NoiseDistribution& noise, std::size_t count, Vertex input,
                    Vertex positive, Rng& rng, std::vector<Vertex>& out) {
  out.clear();
  for (std::size_t n = 0; n < count; ++n) {
    for (int attempt = 0; attempt < kNegativeRedraws; ++attempt) {
      const Vertex cand = noise.sampler.sample(rng);
      if (cand != input && cand != positive) {
        out.push_back(cand);
        break;
      }
    }
  }
}

double log_sigmoid(double x) { return std::log(sigmoid(x)); }

// Core step shared by the public update and the training loop. `grad_in`
// must hold dim() zeros-or-garbage; it is overwritten.
double update_pair(EmbeddingModel& model, Vertex input, Vertex positive,
                   std::span<const Vertex> negatives, double lr,
                   std::span<double> grad_in, const simd::Kernels& k) {
  const std::size_t dim = model.dim();
  double* v_in = model.input(input).data();
  std::fill(grad_in.begin(), grad_in.end(), 0.0);
  double loss = 0.0;

  auto step = [&](Vertex target, double label) {
    double* v_out = model.output(target).data();
    const double score = k.dot(v_out, v_in, dim);
    const double g = lr * (sigmoid(score) - label);
    loss -= label > 0.0 ? log_sigmoid(score) : log_sigmoid(-score);
    k.axpy(g, v_out, grad_in.data(), dim);  // uses v'_j before its own step
    k.axpy(-g, v_in, v_out, dim);
  };
  step(positive, 1.0);
  for (Vertex neg : negatives) step(neg, 0.0);
  k.axpy(-1.0, grad_in.data(), v_in, dim);
  return loss;
}

struct ShardResult {
  double loss = 0.0;
  std::size_t pairs = 0;
};

class Trainer {
 public:
  Trainer(const WalkCorpus& corpus, const SgnsConfig& cfg, EmbeddingModel& model,
          const NoiseDistribution& noise, std::size_t total_pairs)
      : corpus_(corpus),
        cfg_(cfg),
        model_(model),
        noise_(noise),
        total_steps_(static_cast<double>(total_pairs) * cfg.epochs) {}

  ShardResult run_shard(std::size_t begin, std::size_t end, Rng& rng) {
    const simd::Kernels& k = simd::active();
    std::vector<double> grad(model_.dim());
    std::vector<Vertex> negatives;
    negatives.reserve(cfg_.negatives);
    const std::size_t r = cfg_.window_radius;
    ShardResult result;
    std::size_t local = 0;

    for (std::size_t w = begin; w < end; ++w) {
      const Walk& walk = corpus_.walks[w];
      const std::size_t len = walk.size();
      for (std::size_t i = 0; i < len; ++i) {
        const std::size_t lo = i >= r ? i - r : 0;
        const std::size_t hi = std::min(len - 1, i + r);
        for (std::size_t j = lo; j <= hi; ++j) {
          if (j == i) continue;
          const Vertex input = walk[i];
          const Vertex positive = walk[j];
          draw_negatives(noise_, cfg_.negatives, input, positive, rng, negatives);
          const double progress =
              static_cast<double>(processed_.load(std::memory_order_relaxed) + local) /
              total_steps_;
          const double lr =
              cfg_.initial_lr * std::max(kMinLrFraction, 1.0 - progress);
          result.loss += update_pair(model_, input, positive, negatives, lr, grad, k);
          ++result.pairs;
          if (++local == 1024) {
            processed_.fetch_add(local, std::memory_order_relaxed);
            local = 0;
          }
        }
      }
    }
    processed_.fetch_add(local, std::memory_order_relaxed);
    return result;
  }

 private:
  const WalkCorpus& corpus_;
  const SgnsConfig& cfg_;
  EmbeddingModel& model_;
  const NoiseDistribution& noise_;
  const double total_steps_;
  std::atomic<std::size_t> processed_{0};
};

// Fixed (input, positive, negatives) triples drawn once from an evenly
// strided subset of walks, scored without updates after every epoch.
class LossProbe {
 public:
  LossProbe(const WalkCorpus& corpus, const SgnsConfig& cfg,
            const NoiseDistribution& noise, std::size_t total_pairs) {
    const std::size_t stride = std::max<std::size_t>(1, total_pairs / kProbePairs);
    Rng rng(stream_seed(cfg.seed, kProbeStream));
    std::vector<Vertex> negs;
    for (std::size_t w = 0; w < corpus.walks.size(); w += stride) {
      for (const auto& [in, pos] : extract_pairs(corpus.walks[w], cfg.window_radius)) {
        draw_negatives(noise, cfg.negatives, in, pos, rng, negs);
        offsets_.push_back(vertices_.size());
        vertices_.push_back(in);
        vertices_.push_back(pos);
        vertices_.insert(vertices_.end(), negs.begin(), negs.end());
      }
    }
    offsets_.push_back(vertices_.size());
  }

  double mean_loss(const EmbeddingModel& model) const {
    double loss = 0.0;
    const std::size_t n = offsets_.size() - 1;
    for (std::size_t p = 0; p < n; ++p) {
      const Vertex* t = vertices_.data() + offsets_[p];
      const std::size_t len = offsets_[p + 1] - offsets_[p];
      loss += pair_loss(model, t[0], t[1], {t + 2, len - 2});
    }
    return loss / static_cast<double>(n);
  }

 private:
  std::vector<std::size_t> offsets_;
  std::vector<Vertex> vertices_;
};

}  // namespace

void SgnsConfig::validate() const {
  if (dim < 1) throw ConfigError("dim must be >= 1");
  if (window_radius < 1) throw ConfigError("window_radius must be >= 1");
  if (negatives < 1) throw ConfigError("negatives must be >= 1");
  if (!(initial_lr > 0.0)) throw ConfigError("initial learning rate must be > 0");
  if (power != kNoisePower) throw ConfigError("noise power is fixed at 0.75");
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

EmbeddingModel::EmbeddingModel(std::size_t vocab_size, std::size_t dim)
    : vocab_(vocab_size),
      dim_(dim),
      input_(vocab_size * dim, 0.0),
      output_(vocab_size * dim, 0.0) {}

bool EmbeddingModel::all_finite() const {
  auto finite = [](double x) { return std::isfinite(x); };
  return std::all_of(input_.begin(), input_.end(), finite) &&
         std::all_of(output_.begin(), output_.end(), finite);
}

NoiseDistribution build_noise_distribution(const WalkCorpus& corpus,
                                           std::size_t vocab_size, double power) {
  if (corpus.num_tokens() == 0) throw DataError("corpus is empty");
  std::vector<double> counts(vocab_size, 0.0);
  for (const Walk& walk : corpus.walks) {
    for (Vertex v : walk) {
      if (v >= vocab_size) throw DataError("corpus token outside vocabulary");
      counts[v] += 1.0;
    }
  }
  for (double& c : counts) c = c > 0.0 ? std::pow(c, power) : 0.0;
  NoiseDistribution noise;
  noise.sampler = AliasTable(counts);
  noise.probs.resize(vocab_size);
  for (std::size_t v = 0; v < vocab_size; ++v) {
    noise.probs[v] = noise.sampler.probability(v);
  }
  return noise;
}

std::vector<std::pair<Vertex, Vertex>> extract_pairs(std::span<const Vertex> walk,
                                                     std::size_t radius) {
  std::vector<std::pair<Vertex, Vertex>> pairs;
  pairs.reserve(count_pairs(walk.size(), radius));
  for (std::size_t i = 0; i < walk.size(); ++i) {
    const std::size_t lo = i >= radius ? i - radius : 0;
    const std::size_t hi = std::min(walk.size() - 1, i + radius);
    for (std::size_t j = lo; j <= hi; ++j) {
      if (j != i) pairs.emplace_back(walk[i], walk[j]);
    }
  }
  return pairs;
}

std::size_t count_pairs(std::size_t walk_length, std::size_t radius) {
  std::size_t total = 0;
  for (std::size_t i = 0; i < walk_length; ++i) {
    const std::size_t lo = i >= radius ? i - radius : 0;
    const std::size_t hi = std::min(walk_length - 1, i + radius);
    total += hi - lo;
  }
  return total;
}

double sigmoid(double x) {
  x = std::clamp(x, -30.0, 30.0);
  return 1.0 / (1.0 + std::exp(-x));
}

double pair_loss(const EmbeddingModel& model, Vertex input, Vertex positive,
                 std::span<const Vertex> negatives) {
  const auto v_in = model.input(input);
  double loss = -log_sigmoid(simd::dot(model.output(positive), v_in));
  for (Vertex neg : negatives) loss -= log_sigmoid(-simd::dot(model.output(neg), v_in));
  return loss;
}

double sgns_pair_update(EmbeddingModel& model, Vertex input, Vertex positive,
                        std::span<const Vertex> negatives, double lr) {
  std::vector<double> grad(model.dim());
  return update_pair(model, input, positive, negatives, lr, grad, simd::active());
}

EmbeddingModel initialize_model(std::size_t vocab_size, const SgnsConfig& cfg) {
  EmbeddingModel model(vocab_size, cfg.dim);
  Rng rng(stream_seed(cfg.seed, 0));
  const double half = 0.5 / static_cast<double>(cfg.dim);
  std::uniform_real_distribution<double> init(-half, half);
  for (Vertex v = 0; v < vocab_size; ++v) {
    for (double& x : model.input(v)) x = init(rng);
  }
  return model;
}

TrainResult train(const WalkCorpus& corpus, std::size_t vocab_size,
                  const SgnsConfig& cfg) {
  cfg.validate();
  if (vocab_size == 0 || corpus.num_tokens() == 0) {
    throw DataError("cannot train on an empty vocabulary");
  }
  TrainResult result{initialize_model(vocab_size, cfg), {}, {}};
  if (cfg.epochs == 0) return result;

  const NoiseDistribution noise =
      build_noise_distribution(corpus, vocab_size, cfg.power);
  std::size_t total_pairs = 0;
  for (const Walk& walk : corpus.walks) {
    total_pairs += count_pairs(walk.size(), cfg.window_radius);
  }
  if (total_pairs == 0) throw DataError("corpus has no (input, context) pairs");

  const LossProbe probe(corpus, cfg, noise, total_pairs);
  Trainer trainer(corpus, cfg, result.model, noise, total_pairs);
  const std::size_t num_walks = corpus.walks.size();
  const std::size_t workers = std::min<std::size_t>(cfg.threads, num_walks);
  std::vector<Rng> rngs;
  for (std::size_t t = 0; t < workers; ++t) rngs.emplace_back(stream_seed(cfg.seed, t + 1));

  for (std::size_t epoch = 0; epoch < cfg.epochs; ++epoch) {
    std::vector<ShardResult> shards(workers);
    if (workers == 1) {
      shards[0] = trainer.run_shard(0, num_walks, rngs[0]);
    } else {
      std::vector<std::jthread> pool;
      const std::size_t chunk = (num_walks + workers - 1) / workers;
      for (std::size_t t = 0; t < workers; ++t) {
        const std::size_t begin = std::min(num_walks, t * chunk);
        const std::size_t end = std::min(num_walks, begin + chunk);
        pool.emplace_back([&, t, begin, end] {
          shards[t] = trainer.run_shard(begin, end, rngs[t]);
        });
      }
    }
    double loss = 0.0;
    std::size_t pairs = 0;
    for (const ShardResult& s : shards) {
      loss += s.loss;
      pairs += s.pairs;
    }
    result.online_loss.push_back(loss / static_cast<double>(pairs));
    result.epoch_loss.push_back(probe.mean_loss(result.model));
  }
  return result;
}

predict::FeatureTable export_embeddings(const EmbeddingModel& model,
                                        const IdMap& ids) {
  if (ids.size() != model.vocab_size()) {
    throw DataError("id map size does not match embedding vocabulary");
  }
  predict::FeatureTable table;
  table.ids = ids.names();
  table.values.resize(static_cast<Eigen::Index>(model.vocab_size()),
                      static_cast<Eigen::Index>(model.dim()));
  for (Vertex v = 0; v < model.vocab_size(); ++v) {
    const auto row = model.input(v);
    for (std::size_t d = 0; d < model.dim(); ++d) {
      table.values(v, static_cast<Eigen::Index>(d)) = row[d];
    }
  }
  return table;
}

}  // namespace graphfolk
