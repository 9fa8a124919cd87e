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

#include "graphfolk/walks.hpp"

#include <ostream>
#include <random>
#include <thread>

#include "graphfolk/error.hpp"
#include "graphfolk/io.hpp"

namespace graphfolk {

void WalkConfig::validate() const {
  if (walk_length < 1) throw ConfigError("walk_length must be >= 1");
  if (walks_per_vertex < 1) throw ConfigError("walks_per_vertex must be >= 1");
  if (threads < 1) throw ConfigError("threads must be >= 1");
}

std::size_t WalkCorpus::num_tokens() const {
  std::size_t n = 0;
  for (const Walk& w : walks) n += w.size();
  return n;
}

Walk random_walk(const Graph& g, Vertex start, std::size_t length, Rng& rng) {
  Walk walk;
  walk.reserve(length);
  walk.push_back(start);
  Vertex current = start;
  while (walk.size() < length) {
    auto nbrs = g.neighbors(current);
    if (nbrs.empty()) break;
    std::uniform_int_distribution<std::size_t> pick(1, nbrs.size());
    current = nbrs[pick(rng) - 1];
    walk.push_back(current);
  }
  return walk;
}

WalkCorpus generate_corpus(const Graph& g, const WalkConfig& cfg) {
  cfg.validate();
  const std::size_t n = g.num_vertices();
  if (n == 0) throw DataError("cannot walk an empty graph");
  const std::size_t total = n * cfg.walks_per_vertex;

  WalkCorpus corpus;
  corpus.walks.resize(total);
  auto run = [&](std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      Rng rng(stream_seed(cfg.seed, i));
      const auto start = static_cast<Vertex>(i / cfg.walks_per_vertex);
      corpus.walks[i] = random_walk(g, start, cfg.walk_length, rng);
    }
  };

  const std::size_t workers = std::min<std::size_t>(cfg.threads, total);
  if (workers <= 1) {
    run(0, total);
    return corpus;
  }
  {
    std::vector<std::jthread> pool;
    const std::size_t chunk = (total + workers - 1) / workers;
    for (std::size_t t = 0; t < workers; ++t) {
      const std::size_t begin = t * chunk;
      const std::size_t end = std::min(total, begin + chunk);
      if (begin < end) pool.emplace_back(run, begin, end);
    }
  }
  return corpus;
}

void save_corpus(const std::filesystem::path& path, const WalkCorpus& corpus,
                 const IdMap& ids) {
  io::write_atomically(path, [&](std::ostream& out) {
    for (const Walk& walk : corpus.walks) {
      for (std::size_t i = 0; i < walk.size(); ++i) {
        if (i) out << ' ';
        out << ids.external(walk[i]);
      }
      out << '\n';
    }
  });
}

LoadedCorpus load_corpus(const std::filesystem::path& path) {
  const std::string text = io::read_file(path);
  const auto lines = io::split_lines(text);
  LoadedCorpus loaded;
  std::vector<std::vector<std::string_view>> tokens;
  tokens.reserve(lines.size());
  for (std::string_view line : lines) {
    auto fields = io::split_whitespace(line);
    if (fields.empty()) continue;
    loaded.ids.intern(fields.front());
    tokens.push_back(std::move(fields));
  }
  if (tokens.empty()) throw DataError(path.string() + ": corpus is empty");
  loaded.corpus.walks.reserve(tokens.size());
  for (const auto& fields : tokens) {
    Walk walk;
    walk.reserve(fields.size());
    for (std::string_view f : fields) walk.push_back(loaded.ids.intern(f));
    loaded.corpus.walks.push_back(std::move(walk));
  }
  return loaded;
}

}  // namespace graphfolk
