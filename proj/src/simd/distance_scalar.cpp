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

#include <cmath>

#include "r3/distance.hpp"

namespace r3::simd {

float squared_l2_scalar(const float* a, const float* b, std::size_t n) {
  float lane[8] = {0.f, 0.f, 0.f, 0.f, 0.f, 0.f, 0.f, 0.f};
  for (std::size_t i = 0; i < n; ++i) {
    float d = a[i] - b[i];
    lane[i % 8] = std::fma(d, d, lane[i % 8]);
  }
  float s0 = lane[0] + lane[4];
  float s1 = lane[1] + lane[5];
  float s2 = lane[2] + lane[6];
  float s3 = lane[3] + lane[7];
  float t0 = s0 + s2;
  float t1 = s1 + s3;
  return t0 + t1;
}

}  // namespace r3::simd
