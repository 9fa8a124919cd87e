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

// Social graph storage: directed edge lists as read from disk, in-degree
// pruning, and the undirected CSR adjacency that the walkers sample from.

#pragma once

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <unordered_set>
#include <vector>

namespace graphfolk {

using Vertex = std::uint32_t;

struct Edge {
  std::string source;
  std::string target;

  friend bool operator==(const Edge&, const Edge&) = default;
};

// Directed, in file order, duplicates preserved.
using EdgeList = std::vector<Edge>;

// `delimiter` == nullopt splits on runs of whitespace. Lines whose first
// character is '#' and blank lines are skipped.
EdgeList load_edge_list(const std::filesystem::path& path,
                        std::optional<char> delimiter = std::nullopt);
EdgeList parse_edge_list(std::string_view text,
                         std::optional<char> delimiter = std::nullopt,
                         std::string_view source_name = "<edges>");
void save_edge_list(const std::filesystem::path& path, const EdgeList& edges,
                    char delimiter = ' ');

// One external id per line; blank and '#' lines ignored.
std::unordered_set<std::string> load_id_set(const std::filesystem::path& path);

// Keeps an edge when its target is followed by at least `min_in` sources in
// the directed input, or when the target is in `keep`.
EdgeList prune_by_in_degree(const EdgeList& edges, std::size_t min_in,
                            const std::unordered_set<std::string>& keep = {});

// Bijection between external ids and dense indices in first-seen order.
class IdMap {
 public:
  Vertex intern(std::string_view external);
  std::optional<Vertex> find(std::string_view external) const;
  const std::string& external(Vertex v) const { return names_.at(v); }
  std::size_t size() const { return names_.size(); }
  const std::vector<std::string>& names() const { return names_; }

 private:
  std::vector<std::string> names_;
  std::unordered_map<std::string, Vertex> index_;
};

// Immutable undirected simple graph in CSR form. Neighbor lists are sorted
// ascending and duplicate-free.
class Graph {
 public:
  // Symmetrizes, collapses duplicates and drops self-loops. Ids that only
  // occur in self-loops do not become vertices. Throws DataError when no
  // edge survives.
  static Graph build_undirected(const EdgeList& edges);
  // As above, then appends any of `vertices` not yet seen as isolated
  // vertices. Throws DataError when the result has no vertex.
  static Graph build_undirected(const EdgeList& edges,
                                std::span<const std::string> vertices);

  std::size_t num_vertices() const { return offsets_.size() - 1; }
  std::size_t num_edges() const { return neighbors_.size() / 2; }

  // Throws std::out_of_range for v >= num_vertices().
  std::size_t degree(Vertex v) const;
  std::span<const Vertex> neighbors(Vertex v) const;
  bool has_edge(Vertex u, Vertex v) const;

  std::span<const std::size_t> offsets() const { return offsets_; }
  std::span<const Vertex> adjacency() const { return neighbors_; }
  const IdMap& ids() const { return ids_; }

  // Every undirected edge once. Ordered so that build_undirected() on the
  // result reproduces this graph exactly, vertex indices included, when the
  // graph has no isolated vertex.
  EdgeList undirected_edges() const;

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.offsets_ == b.offsets_ && a.neighbors_ == b.neighbors_ &&
           a.ids_.names() == b.ids_.names();
  }

 private:
  Graph() = default;

  std::vector<std::size_t> offsets_{0};
  std::vector<Vertex> neighbors_;
  IdMap ids_;
};

}  // namespace graphfolk
