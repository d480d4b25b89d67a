// Copyright 2026 The Centripetal Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <atomic>
#include <cstdlib>
#include <cstring>

#include "centripetal/errors.hpp"
#include "centripetal/kernels.hpp"

namespace centripetal::kernels {

namespace {

Isa probe() {
#if defined(CENTRIPETAL_HAVE_AVX2)
  __builtin_cpu_init();
  if (__builtin_cpu_supports("avx2")) return Isa::kAvx2;
#endif
  return Isa::kScalar;
}

Isa initial() {
  const char* forced = std::getenv("CENTRIPETAL_ISA");
  if (forced != nullptr && std::strcmp(forced, "scalar") == 0) {
    return Isa::kScalar;
  }
  return probe();
}

std::atomic<Isa>& active() {
  static std::atomic<Isa> isa{initial()};
  return isa;
}

bool use_avx2() {
#if defined(CENTRIPETAL_HAVE_AVX2)
  return active().load(std::memory_order_relaxed) == Isa::kAvx2;
#else
  return false;
#endif
}

}  // namespace

const char* isa_name(Isa isa) {
  switch (isa) {
    case Isa::kScalar:
      return "scalar";
    case Isa::kAvx2:
      return "avx2";
  }
  return "unknown";
}

Isa detected_isa() {
  static const Isa isa = probe();
  return isa;
}

Isa active_isa() { return active().load(std::memory_order_relaxed); }

void set_active_isa(Isa isa) {
  if (isa == Isa::kAvx2 && detected_isa() != Isa::kAvx2) {
    throw ArgumentError("AVX2 kernels are not available on this machine");
  }
  active().store(isa, std::memory_order_relaxed);
}

std::size_t best_response_index(std::span<const double> prices,
                                double own_cost, double rival_price,
                                double demand_slope) {
#if defined(CENTRIPETAL_HAVE_AVX2)
  if (use_avx2()) {
    return avx2::best_response_index(prices, own_cost, rival_price,
                                     demand_slope);
  }
#endif
  return scalar::best_response_index(prices, own_cost, rival_price,
                                     demand_slope);
}

double simpson_sum(std::span<const double> density, double start, double h,
                   double x, double price, double t) {
#if defined(CENTRIPETAL_HAVE_AVX2)
  if (use_avx2()) return avx2::simpson_sum(density, start, h, x, price, t);
#endif
  return scalar::simpson_sum(density, start, h, x, price, t);
}

void parametric_conduct_viability(const ParametricFamily& family,
                                  std::span<const double> A,
                                  std::span<double> M, std::span<double> V) {
#if defined(CENTRIPETAL_HAVE_AVX2)
  if (use_avx2()) {
    avx2::parametric_conduct_viability(family, A, M, V);
    return;
  }
#endif
  scalar::parametric_conduct_viability(family, A, M, V);
}

}  // namespace centripetal::kernels
