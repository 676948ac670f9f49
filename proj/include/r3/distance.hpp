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

#pragma once

#include <cstddef>
#include <span>
#include <string_view>
#include <vector>

// Squared Euclidean distance kernels for embedding retrieval.
//
// Every variant accumulates with the same schedule: element i is folded into
// lane (i mod 8) with a fused multiply-add, and the eight lanes are reduced
// as ((l0+l4)+(l2+l6)) + ((l1+l5)+(l3+l7)). The scalar reference follows the
// schedule literally, so all variants return bit-identical results and
// retrieval rankings do not depend on the host CPU.

#if defined(__x86_64__) || defined(_M_X64)
#define R3_SIMD_X86 1
#else
#define R3_SIMD_X86 0
#endif

#if defined(__aarch64__) || defined(_M_ARM64)
#define R3_SIMD_NEON 1
#else
#define R3_SIMD_NEON 0
#endif

namespace r3::simd {

enum class Isa { Scalar, Avx2, Neon };

std::string_view to_string(Isa isa);

using DistanceKernel = float (*)(const float* a, const float* b, std::size_t n);

float squared_l2_scalar(const float* a, const float* b, std::size_t n);
#if R3_SIMD_X86
float squared_l2_avx2(const float* a, const float* b, std::size_t n);
#endif
#if R3_SIMD_NEON
float squared_l2_neon(const float* a, const float* b, std::size_t n);
#endif

// Compiled in and supported by the running CPU.
bool isa_available(Isa isa);
std::vector<Isa> available_isas();
DistanceKernel kernel_for(Isa isa);  // nullptr when unavailable

// Best available variant, picked on first use. R3_SIMD=scalar|avx2|neon in
// the environment overrides the choice.
Isa active_isa();
// Throws std::invalid_argument when the ISA is not available.
void set_active_isa(Isa isa);

// Dispatched kernel. Spans must have equal length.
float squared_l2(std::span<const float> a, std::span<const float> b);

// out[r] = squared_l2(query, rows[r*dim .. r*dim+dim)).
void squared_l2_rows(std::span<const float> query, std::span<const float> rows, std::size_t dim,
                     std::span<float> out);

}  // namespace r3::simd
