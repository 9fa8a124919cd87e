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

#include <cstdint>
#include <random>
#include <string_view>

namespace graphfolk {

using Rng = std::mt19937_64;

std::uint64_t splitmix64(std::uint64_t x);

// Seed for a named pipeline stage, so that each stage is reproducible on its
// own from the global seed.
std::uint64_t derive_seed(std::uint64_t global_seed, std::string_view stage);

// Seed for the independent stream `stream` (walk index, worker index, ...).
std::uint64_t stream_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace graphfolk
