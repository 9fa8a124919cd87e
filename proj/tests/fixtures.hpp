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

#include <algorithm>
#include <cmath>
#include <random>
#include <string>
#include <vector>

#include "graphfolk/graph.hpp"
#include "graphfolk/rng.hpp"
#include "graphfolk/walks.hpp"

namespace graphfolk::test {

// Connected, non-bipartite 50-vertex graph with uneven degrees: a ring with
// one chord closing a triangle, plus random chords.
inline Graph stationarity_graph() {
  constexpr int n = 50;
  EdgeList edges;
  auto name = [](int v) { return "n" + std::to_string(v); };
  for (int v = 0; v < n; ++v) edges.push_back({name(v), name((v + 1) % n)});
  edges.push_back({name(0), name(2)});
  std::mt19937_64 rng(50);
  std::bernoulli_distribution chord(0.08);
  for (int u = 0; u < n; ++u)
    for (int v = u + 2; v < n; ++v)
      if (chord(rng)) edges.push_back({name(u), name(v)});
  return Graph::build_undirected(edges);
}

// Largest relative gap between visit frequencies of one long walk and the
// degree-proportional stationary distribution.
inline double stationarity_error(const Graph& g, std::size_t steps, std::uint64_t seed) {
  Rng rng(seed);
  const Walk walk = random_walk(g, 0, steps + 1, rng);
  std::vector<double> visits(g.num_vertices(), 0.0);
  for (std::size_t i = 1; i < walk.size(); ++i) visits[walk[i]] += 1.0;
  const double total_degree = 2.0 * static_cast<double>(g.num_edges());
  double worst = 0.0;
  for (Vertex v = 0; v < g.num_vertices(); ++v) {
    const double expected = static_cast<double>(g.degree(v)) / total_degree;
    const double observed = visits[v] / static_cast<double>(steps);
    worst = std::max(worst, std::abs(observed - expected) / expected);
  }
  return worst;
}

}  // namespace graphfolk::test
