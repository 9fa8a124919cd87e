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

#include <cmath>
#include <random>
#include <vector>

#include "doctest.h"
#include "graphfolk/simd.hpp"

using namespace graphfolk;

namespace {

std::vector<double> random_vector(std::size_t n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(-2.0, 2.0);
  std::vector<double> v(n);
  for (double& x : v) x = u(rng);
  return v;
}

std::vector<const simd::Kernels*> available() {
  std::vector<const simd::Kernels*> out;
  for (auto level : {simd::Level::kScalar, simd::Level::kAvx2, simd::Level::kNeon}) {
    if (const simd::Kernels* k = simd::kernels_for(level)) out.push_back(k);
  }
  return out;
}

}  // namespace

TEST_CASE("scalar kernels on small inputs") {
  const simd::Kernels& k = simd::scalar_kernels();
  const double a[] = {1, 2, 3};
  const double b[] = {4, -5, 6};
  CHECK(k.dot(a, b, 3) == 12.0);
  CHECK(k.squared_distance(a, b, 3) == 9.0 + 49.0 + 9.0);
  double y[] = {1, 1, 1};
  k.axpy(2.0, a, y, 3);
  CHECK(y[0] == 3.0);
  CHECK(y[2] == 7.0);
  CHECK(k.dot(a, b, 0) == 0.0);
}

TEST_CASE("vector kernels agree with the scalar reference") {
  const simd::Kernels& ref = simd::scalar_kernels();
  for (const simd::Kernels* k : available()) {
    CAPTURE(simd::level_name(k->level));
    for (std::size_t n : {0u, 1u, 3u, 4u, 7u, 8u, 15u, 16u, 17u, 32u, 33u, 128u, 1001u}) {
      CAPTURE(n);
      auto a = random_vector(n, n + 1);
      auto b = random_vector(n, n + 1000);
      const double tol = 1e-12 * (1.0 + static_cast<double>(n));
      CHECK(std::abs(k->dot(a.data(), b.data(), n) - ref.dot(a.data(), b.data(), n)) <= tol);
      CHECK(std::abs(k->squared_distance(a.data(), b.data(), n) -
                     ref.squared_distance(a.data(), b.data(), n)) <= tol * 4);
      auto y1 = b, y2 = b;
      k->axpy(-0.75, a.data(), y1.data(), n);
      ref.axpy(-0.75, a.data(), y2.data(), n);
      for (std::size_t i = 0; i < n; ++i) CHECK(std::abs(y1[i] - y2[i]) <= 1e-15 * 4);
    }
  }
}

TEST_CASE("dispatch can be forced") {
  const simd::Level before = simd::active_level();
  simd::set_level(simd::Level::kScalar);
  CHECK(simd::active_level() == simd::Level::kScalar);
  CHECK(&simd::active() == &simd::scalar_kernels());
  const std::vector<double> a{1, 2}, b{3, 4};
  CHECK(simd::dot(a, b) == 11.0);
  simd::set_level(before);
  CHECK(simd::active_level() == before);
  CHECK(simd::kernels_for(simd::detect_level()) != nullptr);
}
