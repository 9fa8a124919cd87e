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

#include "graphfolk/synth.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <random>
#include <string>

#include "graphfolk/error.hpp"
#include "graphfolk/io.hpp"
#include "graphfolk/rng.hpp"

namespace graphfolk::synth {
namespace {

constexpr double kIncomeFloor = 1000.0;

// Visits each candidate (i, j) with probability p by geometric skipping.
// Rows are visited in order; row r offers candidates
// [row_first(r), row_first(r) + row_len(r)).
template <class RowFirst, class RowLen, class Emit>
void bernoulli_pairs(std::size_t rows, RowFirst row_first, RowLen row_len, double p,
                     Rng& rng, Emit emit) {
  if (p <= 0.0) return;
  std::geometric_distribution<std::size_t> gap(std::min(p, 1.0));
  std::size_t carry = p >= 1.0 ? 0 : gap(rng);
  for (std::size_t r = 0; r < rows; ++r) {
    const std::size_t len = row_len(r);
    std::size_t pos = carry;
    while (pos < len) {
      emit(r, row_first(r) + pos);
      pos += 1 + (p >= 1.0 ? 0 : gap(rng));
    }
    carry = pos - len;
  }
}

}  // namespace

void SbmSpec::validate() const {
  if (block_sizes.empty()) throw ConfigError("SBM needs at least one block");
  for (std::size_t s : block_sizes) {
    if (s < 2) throw ConfigError("SBM block sizes must be >= 2");
  }
  auto prob_ok = [](double p) { return p >= 0.0 && p <= 1.0; };
  if (!prob_ok(p_in) || !prob_ok(p_out) || (p_adjacent && !prob_ok(*p_adjacent))) {
    throw ConfigError("SBM probabilities must lie in [0, 1]");
  }
  if (p_out > p_in) throw ConfigError("SBM requires p_out <= p_in");
  if (class_of_block.size() != block_sizes.size() ||
      income_of_block.size() != block_sizes.size()) {
    throw ConfigError("class_of_block and incomes need one entry per block");
  }
  if (topic_groups < 1) throw ConfigError("topic_groups must be >= 1");
  for (int c : class_of_block) {
    const long long top = static_cast<long long>(c - 1) * static_cast<long long>(topic_groups) +
                          static_cast<long long>(topic_groups);
    if (c < 1 || top > predict::kNumClasses) {
      throw ConfigError("block classes (after topic-group expansion) must lie in 1..9");
    }
  }
  for (const BlockIncome& inc : income_of_block) {
    if (!(inc.mean > 0.0) || !(inc.stddev >= 0.0)) {
      throw ConfigError("block incomes need mean > 0 and stddev >= 0");
    }
  }
  if (topics_dim > 0 && !(topic_separation >= 0.0)) {
    throw ConfigError("topic_separation must be >= 0");
  }
}

std::size_t SbmSpec::num_vertices() const {
  return std::accumulate(block_sizes.begin(), block_sizes.end(), std::size_t{0});
}

std::vector<std::size_t> reference_block_sizes(std::size_t total) {
  const std::size_t ref_total =
      std::accumulate(std::begin(kReferenceClassCounts), std::end(kReferenceClassCounts),
                      std::size_t{0});
  std::vector<std::size_t> sizes(9);
  std::vector<std::pair<double, std::size_t>> remainders;
  std::size_t assigned = 0;
  for (std::size_t c = 0; c < 9; ++c) {
    const double exact = static_cast<double>(total) *
                         static_cast<double>(kReferenceClassCounts[c]) /
                         static_cast<double>(ref_total);
    sizes[c] = static_cast<std::size_t>(std::floor(exact));
    assigned += sizes[c];
    remainders.emplace_back(exact - std::floor(exact), c);
  }
  std::stable_sort(remainders.begin(), remainders.end(),
                   [](const auto& a, const auto& b) { return a.first > b.first; });
  for (std::size_t i = 0; assigned < total; ++i, ++assigned) ++sizes[remainders[i].second];
  return sizes;
}

SbmSpec reference_spec(std::size_t total, double p_in, double p_out, std::uint64_t seed) {
  SbmSpec spec;
  spec.block_sizes = reference_block_sizes(total);
  spec.p_in = p_in;
  spec.p_out = p_out;
  spec.seed = seed;
  for (int c = 1; c <= 9; ++c) {
    spec.class_of_block.push_back(c);
    spec.income_of_block.push_back({80000.0 - (c - 1) * (65000.0 / 8.0), 3000.0});
  }
  return spec;
}

SyntheticData generate_sbm(const SbmSpec& spec) {
  spec.validate();
  const std::size_t n = spec.num_vertices();
  const std::size_t blocks = spec.block_sizes.size();
  std::vector<std::size_t> first(blocks + 1, 0);
  for (std::size_t b = 0; b < blocks; ++b) first[b + 1] = first[b] + spec.block_sizes[b];

  SyntheticData data;
  data.block_of.resize(n);
  for (std::size_t b = 0; b < blocks; ++b) {
    std::fill(data.block_of.begin() + static_cast<std::ptrdiff_t>(first[b]),
              data.block_of.begin() + static_cast<std::ptrdiff_t>(first[b + 1]), b);
  }
  auto name = [](std::size_t v) { return "u" + std::to_string(v); };

  Rng edge_rng(stream_seed(spec.seed, 0));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t a = 0; a < blocks; ++a) {
    for (std::size_t b = a; b < blocks; ++b) {
      const double p = a == b ? spec.p_in
                       : (b == a + 1 && spec.p_adjacent) ? *spec.p_adjacent
                                                         : spec.p_out;
      const std::size_t rows = spec.block_sizes[a];
      auto emit = [&](std::size_t r, std::size_t col) {
        pairs.emplace_back(first[a] + r, col);
      };
      if (a == b) {
        bernoulli_pairs(
            rows, [&](std::size_t r) { return first[a] + r + 1; },
            [&](std::size_t r) { return rows - r - 1; }, p, edge_rng, emit);
      } else {
        bernoulli_pairs(
            rows, [&](std::size_t) { return first[b]; },
            [&](std::size_t) { return spec.block_sizes[b]; }, p, edge_rng, emit);
      }
    }
  }
  std::sort(pairs.begin(), pairs.end());
  data.edges.reserve(pairs.size());
  for (const auto& [i, j] : pairs) data.edges.push_back({name(i), name(j)});

  Rng label_rng(stream_seed(spec.seed, 1));
  std::uniform_int_distribution<std::size_t> group_draw(0, spec.topic_groups - 1);
  data.topic_group_of.assign(n, 0);
  data.labels.reserve(n);
  for (std::size_t v = 0; v < n; ++v) {
    const std::size_t b = data.block_of[v];
    if (spec.topic_groups > 1) data.topic_group_of[v] = group_draw(label_rng);
    const int cls = (spec.class_of_block[b] - 1) * static_cast<int>(spec.topic_groups) +
                    static_cast<int>(data.topic_group_of[v]) + 1;
    const BlockIncome& inc = spec.income_of_block[b];
    std::normal_distribution<double> income(inc.mean, inc.stddev);
    const double value =
        std::max(kIncomeFloor, inc.stddev > 0.0 ? income(label_rng) : inc.mean);
    data.labels.push_back({name(v), cls, value});
  }

  if (spec.topics_dim > 0) {
    Rng topic_rng(stream_seed(spec.seed, 2));
    std::normal_distribution<double> unit(0.0, 1.0);
    const auto d = static_cast<Eigen::Index>(spec.topics_dim);
    Eigen::MatrixXd centres(static_cast<Eigen::Index>(spec.topic_groups), d);
    for (Eigen::Index g = 0; g < centres.rows(); ++g) {
      for (Eigen::Index c = 0; c < d; ++c) centres(g, c) = spec.topic_separation * unit(topic_rng);
    }
    data.topics.values.resize(static_cast<Eigen::Index>(n), d);
    for (std::size_t v = 0; v < n; ++v) {
      data.topics.ids.push_back(name(v));
      const auto g = static_cast<Eigen::Index>(data.topic_group_of[v]);
      for (Eigen::Index c = 0; c < d; ++c) {
        data.topics.values(static_cast<Eigen::Index>(v), c) = centres(g, c) + unit(topic_rng);
      }
    }
  }
  return data;
}

SbmSpec parse_sbm_spec(std::string_view text, std::string_view source) {
  const std::string src(source);
  std::map<std::string, std::pair<std::string, std::size_t>> kv;
  const auto lines = io::split_lines(text);
  for (std::size_t n = 0; n < lines.size(); ++n) {
    const auto line = io::trim(lines[n]);
    if (line.empty() || line.front() == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(src, n + 1, "expected key = value");
    const auto key = io::trim(line.substr(0, eq));
    const auto value = io::trim(line.substr(eq + 1));
    if (key.empty()) throw ParseError(src, n + 1, "empty key");
    kv[std::string(key)] = {std::string(value), n + 1};
  }

  auto number = [&](const std::string& key, const std::string& text, std::size_t line) {
    double v = 0.0;
    if (!io::parse_double(io::trim(text), v)) {
      throw ParseError(src, line, "bad number for " + key + ": " + text);
    }
    return v;
  };
  auto list = [&](const std::string& key) {
    std::vector<double> out;
    const auto& [text, line] = kv.at(key);
    for (auto f : io::split_on(text, ',')) out.push_back(number(key, std::string(f), line));
    return out;
  };
  auto scalar = [&](const std::string& key, double fallback) {
    auto it = kv.find(key);
    return it == kv.end() ? fallback : number(key, it->second.first, it->second.second);
  };
  auto count = [&](const std::string& key, double v) {
    if (v < 0 || v != std::floor(v)) {
      throw ParseError(src, kv.at(key).second, key + " must be a non-negative integer");
    }
    return static_cast<std::size_t>(v);
  };

  static const char* known[] = {"total",        "block_sizes", "p_in",        "p_out",
                                "p_adjacent",   "class_of_block", "income_mean", "income_std",
                                "seed",         "topic_groups", "topics_dim", "topic_separation"};
  for (const auto& [key, value] : kv) {
    if (std::find(std::begin(known), std::end(known), key) == std::end(known)) {
      throw ParseError(src, value.second, "unknown key " + key);
    }
  }

  SbmSpec spec;
  const double p_in = scalar("p_in", 0.1);
  const double p_out = scalar("p_out", 0.005);
  if (kv.contains("block_sizes")) {
    for (double s : list("block_sizes")) spec.block_sizes.push_back(count("block_sizes", s));
    spec.p_in = p_in;
    spec.p_out = p_out;
    for (std::size_t b = 0; b < spec.block_sizes.size(); ++b) {
      spec.class_of_block.push_back(static_cast<int>(b % 9) + 1);
      spec.income_of_block.push_back({});
    }
  } else if (kv.contains("total")) {
    spec = reference_spec(count("total", scalar("total", 0)), p_in, p_out, 0);
  } else {
    throw ParseError(src, 0, "spec needs either total or block_sizes");
  }
  if (kv.contains("p_adjacent")) spec.p_adjacent = scalar("p_adjacent", 0.0);
  if (kv.contains("class_of_block")) {
    spec.class_of_block.clear();
    for (double c : list("class_of_block")) {
      spec.class_of_block.push_back(static_cast<int>(count("class_of_block", c)));
    }
  }
  auto broadcast = [&](const std::string& key, auto assign) {
    if (!kv.contains(key)) return;
    const auto values = list(key);
    if (values.size() != 1 && values.size() != spec.block_sizes.size()) {
      throw ParseError(src, kv.at(key).second, key + " needs 1 or one-per-block values");
    }
    for (std::size_t b = 0; b < spec.income_of_block.size(); ++b) {
      assign(spec.income_of_block[b], values.size() == 1 ? values[0] : values[b]);
    }
  };
  broadcast("income_mean", [](BlockIncome& inc, double v) { inc.mean = v; });
  broadcast("income_std", [](BlockIncome& inc, double v) { inc.stddev = v; });
  if (kv.contains("seed")) {
    long long s = 0;
    if (!io::parse_int(kv.at("seed").first, s)) {
      throw ParseError(src, kv.at("seed").second, "seed must be an integer");
    }
    spec.seed = static_cast<std::uint64_t>(s);
  }
  if (kv.contains("topic_groups")) spec.topic_groups = count("topic_groups", scalar("topic_groups", 1));
  if (kv.contains("topics_dim")) spec.topics_dim = count("topics_dim", scalar("topics_dim", 0));
  spec.topic_separation = scalar("topic_separation", spec.topic_separation);
  spec.validate();
  return spec;
}

SbmSpec load_sbm_spec(const std::filesystem::path& path) {
  return parse_sbm_spec(io::read_file(path), path.string());
}

}  // namespace graphfolk::synth
