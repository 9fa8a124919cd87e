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

// Vector kernels used by the training and prediction inner loops.
//
// Every kernel has a portable scalar reference implementation plus
// intrinsic variants (AVX2+FMA on x86-64, NEON on AArch64). The variant is
// chosen once at startup from CPUID / the target architecture and can be
// forced with the GRAPHFOLK_SIMD environment variable ("scalar", "avx2",
// "neon") or with set_level().

#pragma once

#include <cassert>
#include <cstddef>
#include <span>
#include <string_view>

namespace graphfolk::simd {

enum class Level { kScalar, kAvx2, kNeon };

std::string_view level_name(Level level);

struct Kernels {
  Level level;
  double (*dot)(const double* a, const double* b, std::size_t n);
  // y += alpha * x
  void (*axpy)(double alpha, const double* x, double* y, std::size_t n);
  double (*squared_distance)(const double* a, const double* b, std::size_t n);
};

const Kernels& scalar_kernels();
// nullptr when the variant was not compiled in or the CPU lacks support.
const Kernels* kernels_for(Level level);

Level detect_level();
Level active_level();
// Throws std::invalid_argument when the level is unavailable on this host.
void set_level(Level level);
const Kernels& active();

inline double dot(std::span<const double> a, std::span<const double> b) {
  assert(a.size() == b.size());
  return active().dot(a.data(), b.data(), a.size());
}

inline void axpy(double alpha, std::span<const double> x, std::span<double> y) {
  assert(x.size() == y.size());
  active().axpy(alpha, x.data(), y.data(), x.size());
}

inline double squared_distance(std::span<const double> a,
                               std::span<const double> b) {
  assert(a.size() == b.size());
  return active().squared_distance(a.data(), b.data(), a.size());
}

namespace detail {
// Defined in the per-ISA translation units.
const Kernels& avx2_kernels();
const Kernels& neon_kernels();
}  // namespace detail

}  // namespace graphfolk::simd
