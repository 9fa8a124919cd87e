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

#include "graphfolk/graph.hpp"

#include <algorithm>
#include <ostream>
#include <stdexcept>

#include "graphfolk/error.hpp"
#include "graphfolk/io.hpp"

namespace graphfolk {

EdgeList parse_edge_list(std::string_view text, std::optional<char> delimiter,
                         std::string_view source_name) {
  EdgeList edges;
  const auto lines = io::split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    std::string_view line = lines[n];
    if (line.empty() || line.front() == '#') continue;
    if (!delimiter && io::trim(line).empty()) continue;
    const auto fields =
        delimiter ? io::split_on(line, *delimiter) : io::split_whitespace(line);
    if (fields.size() != 2) {
      throw ParseError(std::string(source_name), n + 1,
                       "expected 2 fields, found " + std::to_string(fields.size()));
    }
    if (fields[0].empty() || fields[1].empty()) {
      throw ParseError(std::string(source_name), n + 1, "empty vertex id");
    }
    edges.push_back({std::string(fields[0]), std::string(fields[1])});
  }
  return edges;
}

EdgeList load_edge_list(const std::filesystem::path& path,
                        std::optional<char> delimiter) {
  return parse_edge_list(io::read_file(path), delimiter, path.string());
}

void save_edge_list(const std::filesystem::path& path, const EdgeList& edges,
                    char delimiter) {
  io::write_atomically(path, [&](std::ostream& out) {
    for (const Edge& e : edges) out << e.source << delimiter << e.target << '\n';
  });
}

std::unordered_set<std::string> load_id_set(const std::filesystem::path& path) {
  std::unordered_set<std::string> ids;
  const std::string text = io::read_file(path);
  for (std::string_view line : io::split_lines(text)) {
    line = io::trim(line);
    if (line.empty() || line.front() == '#') continue;
    ids.emplace(line);
  }
  return ids;
}

EdgeList prune_by_in_degree(const EdgeList& edges, std::size_t min_in,
                            const std::unordered_set<std::string>& keep) {
  if (min_in == 0) return edges;
  std::unordered_map<std::string_view, std::size_t> in_degree;
  for (const Edge& e : edges) ++in_degree[e.target];
  EdgeList kept;
  for (const Edge& e : edges) {
    if (in_degree[e.target] >= min_in || keep.contains(e.target)) kept.push_back(e);
  }
  return kept;
}

Vertex IdMap::intern(std::string_view external) {
  auto [it, inserted] =
      index_.try_emplace(std::string(external), static_cast<Vertex>(names_.size()));
  if (inserted) names_.emplace_back(external);
  return it->second;
}

std::optional<Vertex> IdMap::find(std::string_view external) const {
  auto it = index_.find(std::string(external));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Graph Graph::build_undirected(const EdgeList& edges) {
  return build_undirected(edges, {});
}

Graph Graph::build_undirected(const EdgeList& edges,
                              std::span<const std::string> vertices) {
  Graph g;
  std::vector<std::pair<Vertex, Vertex>> arcs;
  arcs.reserve(edges.size() * 2);
  for (const Edge& e : edges) {
    if (e.source == e.target) continue;
    const Vertex u = g.ids_.intern(e.source);
    const Vertex v = g.ids_.intern(e.target);
    arcs.emplace_back(u, v);
    arcs.emplace_back(v, u);
  }
  for (const std::string& v : vertices) g.ids_.intern(v);
  if (g.ids_.size() == 0) throw DataError("edge list yields an empty graph");

  std::sort(arcs.begin(), arcs.end());
  arcs.erase(std::unique(arcs.begin(), arcs.end()), arcs.end());

  const std::size_t n = g.ids_.size();
  g.offsets_.assign(n + 1, 0);
  for (const auto& [u, v] : arcs) ++g.offsets_[u + 1];
  for (std::size_t i = 0; i < n; ++i) g.offsets_[i + 1] += g.offsets_[i];
  g.neighbors_.reserve(arcs.size());
  for (const auto& arc : arcs) g.neighbors_.push_back(arc.second);
  return g;
}

std::size_t Graph::degree(Vertex v) const {
  if (v >= num_vertices()) {
    throw std::out_of_range("vertex " + std::to_string(v) + " out of range");
  }
  return offsets_[v + 1] - offsets_[v];
}

std::span<const Vertex> Graph::neighbors(Vertex v) const {
  const std::size_t d = degree(v);
  return std::span<const Vertex>(neighbors_).subspan(offsets_[v], d);
}

bool Graph::has_edge(Vertex u, Vertex v) const {
  auto nbrs = neighbors(u);
  return std::binary_search(nbrs.begin(), nbrs.end(), v);
}

EdgeList Graph::undirected_edges() const {
  // Each vertex is first introduced by an edge to its lowest neighbor. That
  // neighbor is either already introduced or is the next index (the pair was
  // new when first read), so first-seen order is reproduced.
  const std::size_t n = num_vertices();
  std::vector<char> introduced(n, 0);
  std::vector<std::pair<Vertex, Vertex>> witness;
  EdgeList out;
  out.reserve(num_edges());
  auto emit = [&](Vertex a, Vertex b) {
    out.push_back({ids_.external(a), ids_.external(b)});
  };
  for (Vertex v = 0; v < n; ++v) {
    if (introduced[v] || degree(v) == 0) continue;
    const Vertex m = neighbors(v).front();
    if (m < v) {
      emit(m, v);
    } else {
      emit(v, m);
      introduced[m] = 1;
    }
    introduced[v] = 1;
    witness.emplace_back(std::min(v, m), std::max(v, m));
  }
  std::sort(witness.begin(), witness.end());
  for (Vertex u = 0; u < n; ++u) {
    for (Vertex v : neighbors(u)) {
      if (v <= u) continue;
      if (std::binary_search(witness.begin(), witness.end(), std::make_pair(u, v)))
        continue;
      emit(u, v);
    }
  }
  return out;
}

}  // namespace graphfolk
