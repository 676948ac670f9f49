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

#include <atomic>
#include <cstdlib>
#include <stdexcept>
#include <string>

#include "r3/distance.hpp"

namespace r3::simd {

std::string_view to_string(Isa isa) {
  switch (isa) {
    case Isa::Scalar: return "scalar";
    case Isa::Avx2: return "avx2";
    case Isa::Neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::Scalar:
      return true;
    case Isa::Avx2:
#if R3_SIMD_X86 && defined(R3_HAVE_AVX2_KERNEL)
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
    case Isa::Neon:
      return R3_SIMD_NEON != 0;
  }
  return false;
}

std::vector<Isa> available_isas() {
  std::vector<Isa> out;
  for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
    if (isa_available(isa)) out.push_back(isa);
  }
  return out;
}

DistanceKernel kernel_for(Isa isa) {
  if (!isa_available(isa)) return nullptr;
  switch (isa) {
    case Isa::Scalar: return &squared_l2_scalar;
#if R3_SIMD_X86 && defined(R3_HAVE_AVX2_KERNEL)
    case Isa::Avx2: return &squared_l2_avx2;
#endif
#if R3_SIMD_NEON
    case Isa::Neon: return &squared_l2_neon;
#endif
    default: return nullptr;
  }
}

namespace {

Isa pick_default() {
  if (const char* forced = std::getenv("R3_SIMD")) {
    std::string name(forced);
    for (Isa isa : {Isa::Scalar, Isa::Avx2, Isa::Neon}) {
      if (name == to_string(isa) && isa_available(isa)) return isa;
    }
  }
  if (isa_available(Isa::Avx2)) return Isa::Avx2;
  if (isa_available(Isa::Neon)) return Isa::Neon;
  return Isa::Scalar;
}

struct Active {
  std::atomic<Isa> isa;
  std::atomic<DistanceKernel> kernel;
  Active() : isa(pick_default()), kernel(kernel_for(isa.load())) {}
};

Active& active() {
  static Active state;
  return state;
}

}  // namespace

Isa active_isa() { return active().isa.load(); }

void set_active_isa(Isa isa) {
  DistanceKernel k = kernel_for(isa);
  if (k == nullptr) throw std::invalid_argument("SIMD variant not available: " + std::string(to_string(isa)));
  active().kernel.store(k);
  active().isa.store(isa);
}

float squared_l2(std::span<const float> a, std::span<const float> b) {
  if (a.size() != b.size()) throw std::invalid_argument("squared_l2: length mismatch");
  return active().kernel.load()(a.data(), b.data(), a.size());
}

void squared_l2_rows(std::span<const float> query, std::span<const float> rows, std::size_t dim,
                     std::span<float> out) {
  if (query.size() != dim || rows.size() != dim * out.size()) {
    throw std::invalid_argument("squared_l2_rows: shape mismatch");
  }
  DistanceKernel k = active().kernel.load();
  for (std::size_t r = 0; r < out.size(); ++r) out[r] = k(query.data(), rows.data() + r * dim, dim);
}

}  // namespace r3::simd
