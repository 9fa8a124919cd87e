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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "graphfolk/simd.hpp"

namespace graphfolk::simd {
namespace {

bool cpu_has_avx2() {
#if defined(GRAPHFOLK_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Level initial_level() {
  const char* env = std::getenv("GRAPHFOLK_SIMD");
  if (env != nullptr) {
    const std::string_view name(env);
    for (Level level : {Level::kScalar, Level::kAvx2, Level::kNeon}) {
      if (name == level_name(level) && kernels_for(level) != nullptr) {
        return level;
      }
    }
    throw std::invalid_argument("GRAPHFOLK_SIMD=" + std::string(name) +
                                " is unknown or unsupported on this host");
  }
  return detect_level();
}

std::atomic<const Kernels*>& active_slot() {
  static std::atomic<const Kernels*> slot{kernels_for(initial_level())};
  return slot;
}

}  // namespace

std::string_view level_name(Level level) {
  switch (level) {
    case Level::kScalar: return "scalar";
    case Level::kAvx2: return "avx2";
    case Level::kNeon: return "neon";
  }
  return "unknown";
}

const Kernels* kernels_for(Level level) {
  switch (level) {
    case Level::kScalar:
      return &scalar_kernels();
    case Level::kAvx2:
#if defined(GRAPHFOLK_HAVE_AVX2)
      if (cpu_has_avx2()) return &detail::avx2_kernels();
#endif
      return nullptr;
    case Level::kNeon:
#if defined(GRAPHFOLK_HAVE_NEON)
      return &detail::neon_kernels();
#else
      return nullptr;
#endif
  }
  return nullptr;
}

Level detect_level() {
  if (kernels_for(Level::kAvx2) != nullptr) return Level::kAvx2;
  if (kernels_for(Level::kNeon) != nullptr) return Level::kNeon;
  return Level::kScalar;
}

Level active_level() { return active().level; }

void set_level(Level level) {
  const Kernels* k = kernels_for(level);
  if (k == nullptr) {
    throw std::invalid_argument("SIMD level " + std::string(level_name(level)) +
                                " is not available on this host");
  }
  active_slot().store(k, std::memory_order_relaxed);
}

const Kernels& active() {
  return *active_slot().load(std::memory_order_relaxed);
}

}  // namespace graphfolk::simd
