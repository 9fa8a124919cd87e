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

#include "graphfolk/alias_table.hpp"

#include <cmath>

#include "graphfolk/error.hpp"

namespace graphfolk {

AliasTable::AliasTable(std::span<const double> weights) {
  const std::size_t n = weights.size();
  if (n == 0) throw DataError("alias table needs at least one weight");
  double total = 0.0;
  for (double w : weights) {
    if (!(w >= 0.0) || !std::isfinite(w)) {
      throw DataError("alias table weights must be finite and non-negative");
    }
    total += w;
  }
  if (total <= 0.0) throw DataError("alias table weights sum to zero");

  normalized_.resize(n);
  prob_.assign(n, 0.0);
  alias_.resize(n);
  std::vector<double> scaled(n);
  std::vector<std::uint32_t> small, large;
  for (std::size_t i = 0; i < n; ++i) {
    normalized_[i] = weights[i] / total;
    scaled[i] = normalized_[i] * static_cast<double>(n);
    alias_[i] = static_cast<std::uint32_t>(i);
    (scaled[i] < 1.0 ? small : large).push_back(static_cast<std::uint32_t>(i));
  }
  while (!small.empty() && !large.empty()) {
    const std::uint32_t s = small.back();
    small.pop_back();
    const std::uint32_t l = large.back();
    prob_[s] = scaled[s];
    alias_[s] = l;
    scaled[l] = (scaled[l] + scaled[s]) - 1.0;
    if (scaled[l] < 1.0) {
      large.pop_back();
      small.push_back(l);
    }
  }
  // Leftovers are 1 up to rounding, except zero weights stranded by it.
  std::uint32_t any_positive = 0;
  while (normalized_[any_positive] == 0.0) ++any_positive;
  for (std::uint32_t i : large) prob_[i] = 1.0;
  for (std::uint32_t i : small) {
    prob_[i] = normalized_[i] > 0.0 ? 1.0 : 0.0;
    if (normalized_[i] == 0.0) alias_[i] = any_positive;
  }
}

}  // namespace graphfolk
