// Copyright 2026 The R3 Authors.
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

#include <gtest/gtest.h>

#include <cmath>
#include <cstring>
#include <random>

#include "r3/distance.hpp"

namespace r3::simd {
namespace {

// The documented accumulation schedule written out independently of the
// library: lane i%8 gets fma(d, d, lane), then a fixed pairwise reduction.
float schedule_oracle(const float* a, const float* b, std::size_t n) {
  float lane[8] = {};
  for (std::size_t i = 0; i < n; ++i) {
    const float d = a[i] - b[i];
    lane[i % 8] = std::fma(d, d, lane[i % 8]);
  }
  return ((lane[0] + lane[4]) + (lane[2] + lane[6])) + ((lane[1] + lane[5]) + (lane[3] + lane[7]));
}

std::uint32_t bits(float f) {
  std::uint32_t u;
  std::memcpy(&u, &f, sizeof u);
  return u;
}

std::vector<float> random_vector(std::mt19937& rng, std::size_t n, float scale) {
  std::normal_distribution<float> dist(0.0f, scale);
  std::vector<float> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

TEST(DistanceTest, ScalarFollowsTheScheduleBitForBit) {
  std::mt19937 rng(99);
  for (std::size_t n = 0; n <= 300; ++n) {
    auto a = random_vector(rng, n, 3.0f), b = random_vector(rng, n, 3.0f);
    ASSERT_EQ(bits(squared_l2_scalar(a.data(), b.data(), n)), bits(schedule_oracle(a.data(), b.data(), n)))
        << "n=" << n;
  }
}

TEST(DistanceTest, EveryAvailableIsaMatchesScalarBitForBit) {
  std::mt19937 rng(2024);
  for (Isa isa : available_isas()) {
    auto kernel = kernel_for(isa);
    ASSERT_NE(kernel, nullptr) << to_string(isa);
    for (std::size_t n = 0; n <= 300; ++n) {
      for (float scale : {1e-3f, 1.0f, 1e3f}) {
        auto a = random_vector(rng, n, scale), b = random_vector(rng, n, scale);
        // Unaligned starts exercise the loads.
        std::vector<float> pa(n + 1), pb(n + 3);
        std::copy(a.begin(), a.end(), pa.begin() + 1);
        std::copy(b.begin(), b.end(), pb.begin() + 3);
        ASSERT_EQ(bits(kernel(pa.data() + 1, pb.data() + 3, n)), bits(squared_l2_scalar(a.data(), b.data(), n)))
            << to_string(isa) << " n=" << n << " scale=" << scale;
      }
    }
  }
}

TEST(DistanceTest, CloseToDoublePrecisionBruteForce) {
  std::mt19937 rng(5);
  for (std::size_t n : {1u, 7u, 8u, 9u, 64u, 255u, 256u, 1000u}) {
    auto a = random_vector(rng, n, 1.0f), b = random_vector(rng, n, 1.0f);
    double exact = 0;
    for (std::size_t i = 0; i < n; ++i) {
      double d = static_cast<double>(a[i]) - b[i];
      exact += d * d;
    }
    const float got = squared_l2(a, b);
    EXPECT_NEAR(got, exact, 1e-5 * exact + 1e-6) << "n=" << n;
  }
}

TEST(DistanceTest, SmallIntegersAreExact) {
  std::mt19937 rng(11);
  std::uniform_int_distribution<int> v(-20, 20);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + trial;
    std::vector<float> a(n), b(n);
    long long exact = 0;
    for (std::size_t i = 0; i < n; ++i) {
      int x = v(rng), y = v(rng);
      a[i] = static_cast<float>(x);
      b[i] = static_cast<float>(y);
      exact += static_cast<long long>(x - y) * (x - y);
    }
    for (Isa isa : available_isas()) EXPECT_EQ(kernel_for(isa)(a.data(), b.data(), n), static_cast<float>(exact));
  }
}

TEST(DistanceTest, RowsKernelMatchesPerRowCalls) {
  std::mt19937 rng(3);
  const std::size_t dim = 37, count = 19;
  auto query = random_vector(rng, dim, 1.0f);
  auto rows = random_vector(rng, dim * count, 1.0f);
  std::vector<float> out(count);
  squared_l2_rows(query, rows, dim, out);
  for (std::size_t r = 0; r < count; ++r) {
    EXPECT_EQ(bits(out[r]), bits(squared_l2_scalar(query.data(), rows.data() + r * dim, dim)));
  }
}

TEST(DistanceTest, DispatchCanBePinned) {
  const Isa original = active_isa();
  EXPECT_TRUE(isa_available(Isa::Scalar));
  for (Isa isa : available_isas()) {
    set_active_isa(isa);
    EXPECT_EQ(active_isa(), isa);
  }
  for (Isa isa : {Isa::Avx2, Isa::Neon}) {
    if (!isa_available(isa)) {
      EXPECT_THROW(set_active_isa(isa), std::invalid_argument);
      EXPECT_EQ(kernel_for(isa), nullptr);
    }
  }
  set_active_isa(original);
}

}  // namespace
}  // namespace r3::simd
