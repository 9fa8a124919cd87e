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

#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <vector>

namespace graphfolk {

// Walker/Vose alias table: O(n) construction, O(1) draws from a fixed
// discrete distribution. Zero weights are allowed and are never drawn.
class AliasTable {
 public:
  AliasTable() = default;
  // Throws DataError if weights are empty, negative, non-finite, or all zero.
  explicit AliasTable(std::span<const double> weights);

  std::size_t size() const { return prob_.size(); }
  // Normalized weight of outcome i.
  double probability(std::size_t i) const { return normalized_[i]; }

  template <class Urbg>
  std::uint32_t sample(Urbg& rng) const {
    std::uniform_int_distribution<std::uint32_t> column(
        0, static_cast<std::uint32_t>(prob_.size() - 1));
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    const std::uint32_t c = column(rng);
    return coin(rng) < prob_[c] ? c : alias_[c];
  }

 private:
  std::vector<double> normalized_;
  std::vector<double> prob_;
  std::vector<std::uint32_t> alias_;
};

}  // namespace graphfolk
