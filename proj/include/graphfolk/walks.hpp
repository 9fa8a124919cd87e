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

// Uniform random-walk corpus generation.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <vector>

#include "graphfolk/graph.hpp"
#include "graphfolk/rng.hpp"

namespace graphfolk {

struct WalkConfig {
  std::size_t walk_length = 80;  // vertices per walk, start included
  std::size_t walks_per_vertex = 1;
  std::uint64_t seed = 0;
  unsigned threads = 1;

  // Throws ConfigError.
  void validate() const;
};

using Walk = std::vector<Vertex>;

struct WalkCorpus {
  std::vector<Walk> walks;

  std::size_t num_tokens() const;
  friend bool operator==(const WalkCorpus&, const WalkCorpus&) = default;
};

// At each step draws x uniformly from {1..D_v} and moves to the x-th lowest
// indexed neighbour. Stops early at a degree-0 vertex.
Walk random_walk(const Graph& g, Vertex start, std::size_t length, Rng& rng);

// Walk i * walks_per_vertex + k starts at vertex i and draws from its own
// stream, so the result does not depend on cfg.threads.
WalkCorpus generate_corpus(const Graph& g, const WalkConfig& cfg);

// One walk per line, space-separated external ids.
void save_corpus(const std::filesystem::path& path, const WalkCorpus& corpus,
                 const IdMap& ids);

struct LoadedCorpus {
  WalkCorpus corpus;
  IdMap ids;
};

// Ids are assigned to the first token of every line before any other token,
// so a corpus written by save_corpus() gets back the graph's vertex order.
LoadedCorpus load_corpus(const std::filesystem::path& path);

}  // namespace graphfolk
