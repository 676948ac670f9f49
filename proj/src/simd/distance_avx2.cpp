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

// Built with -mavx2 -mfma; only reached after a runtime CPU check.
#include <immintrin.h>

#include "r3/distance.hpp"

namespace r3::simd {

float squared_l2_avx2(const float* a, const float* b, std::size_t n) {
  __m256 acc = _mm256_setzero_ps();
  std::size_t i = 0;
  for (; i + 8 <= n; i += 8) {
    __m256 d = _mm256_sub_ps(_mm256_loadu_ps(a + i), _mm256_loadu_ps(b + i));
    acc = _mm256_fmadd_ps(d, d, acc);
  }
  if (i < n) {
    // Masked-off lanes load 0, and fma(0, 0, x) == x.
    alignas(32) int mask_bits[8];
    for (std::size_t j = 0; j < 8; ++j) mask_bits[j] = (i + j < n) ? -1 : 0;
    __m256i mask = _mm256_load_si256(reinterpret_cast<const __m256i*>(mask_bits));
    __m256 d = _mm256_sub_ps(_mm256_maskload_ps(a + i, mask), _mm256_maskload_ps(b + i, mask));
    acc = _mm256_fmadd_ps(d, d, acc);
  }
  __m128 lo = _mm256_castps256_ps128(acc);
  __m128 hi = _mm256_extractf128_ps(acc, 1);
  __m128 s = _mm_add_ps(lo, hi);                     // l0+l4, l1+l5, l2+l6, l3+l7
  __m128 t = _mm_add_ps(s, _mm_movehl_ps(s, s));     // s0+s2, s1+s3
  __m128 r = _mm_add_ss(t, _mm_shuffle_ps(t, t, 1)); // t0+t1
  return _mm_cvtss_f32(r);
}

}  // namespace r3::simd
