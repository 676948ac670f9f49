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

#include <arm_neon.h>

#include "r3/distance.hpp"

namespace r3::simd {

float squared_l2_neon(const float* a, const float* b, std::size_t n) {
  // lo holds lanes 0-3, hi lanes 4-7 of the shared 8-lane schedule.
  float32x4_t lo = vdupq_n_f32(0.f);
  float32x4_t hi = vdupq_n_f32(0.f);
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    float32x4_t d0 = vsubq_f32(vld1q_f32(a + i), vld1q_f32(b + i));
    float32x4_t d1 = vsubq_f32(vld1q_f32(a + i + 4), vld1q_f32(b + i + 4));
    lo = vfmaq_f32(lo, d0, d0);
    hi = vfmaq_f32(hi, d1, d1);
  }
  if (i < n) {
    float ta[8] = {0.f, 0.f, 0.f, 0.f, 0.f, 0.f, 0.f, 0.f};
    float tb[8] = {0.f, 0.f, 0.f, 0.f, 0.f, 0.f, 0.f, 0.f};
    for (std::size_t j = 0; i + j < n; ++j) {
      ta[j] = a[i + j];
      tb[j] = b[i + j];
    }
    float32x4_t d0 = vsubq_f32(vld1q_f32(ta), vld1q_f32(tb));
    float32x4_t d1 = vsubq_f32(vld1q_f32(ta + 4), vld1q_f32(tb + 4));
    lo = vfmaq_f32(lo, d0, d0);
    hi = vfmaq_f32(hi, d1, d1);
  }
  float32x4_t s = vaddq_f32(lo, hi);
  float32x2_t t = vadd_f32(vget_low_f32(s), vget_high_f32(s));
  return vget_lane_f32(t, 0) + vget_lane_f32(t, 1);
}

}  // namespace r3::simd
