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

// Data-parallel inner loops behind the oracle and scan routines.
//
// Each kernel has a scalar reference in namespace `scalar` and, on x86-64,
// an AVX2 variant in namespace `avx2`. The free functions in
// `centripetal::kernels` dispatch to the variant selected at runtime.
//
// Contracts between variants:
//   best_response_index           identical index (per-lane IEEE ops match)
//   parametric_conduct_viability  bit-identical outputs
//   simpson_sum                   equal up to summation order (~1e-15 rel)

#ifndef CENTRIPETAL_KERNELS_HPP_
#define CENTRIPETAL_KERNELS_HPP_

#include <cstddef>
#include <span>

#include "centripetal/primitives.hpp"

namespace centripetal::kernels {

enum class Isa { kScalar, kAvx2 };

const char* isa_name(Isa isa);

// Best instruction set the running CPU supports (and this build contains).
Isa detected_isa();

// Currently dispatched variant. Starts at detected_isa() unless the
// environment variable CENTRIPETAL_ISA=scalar forces the reference path.
Isa active_isa();

// Throws ArgumentError when `isa` is not available on this machine.
void set_active_isa(Isa isa);

// Index of the first price maximising
//   (p - own_cost) * clamp(0.5 + demand_slope * (rival_price - p), 0, 1)
// over `prices`, which must be non-empty.
std::size_t best_response_index(std::span<const double> prices,
                                double own_cost, double rival_price,
                                double demand_slope);

// Composite-Simpson sum over nodes theta_i = start + i * h (i = 0..n-1, n odd)
//   (h / 3) * sum_i w_i * density_i * (-price - t * (theta_i - x)^2)
// with w = 1, 4, 2, 4, ..., 4, 1.
double simpson_sum(std::span<const double> density, double start, double h,
                   double x, double price, double t);

// M = t^2/kappa and V = M/4 - F of a parametric family at each capability.
void parametric_conduct_viability(const ParametricFamily& family,
                                  std::span<const double> A,
                                  std::span<double> M, std::span<double> V);

namespace scalar {
std::size_t best_response_index(std::span<const double> prices,
                                double own_cost, double rival_price,
                                double demand_slope);
double simpson_sum(std::span<const double> density, double start, double h,
                   double x, double price, double t);
void parametric_conduct_viability(const ParametricFamily& family,
                                  std::span<const double> A,
                                  std::span<double> M, std::span<double> V);
}  // namespace scalar

namespace avx2 {
std::size_t best_response_index(std::span<const double> prices,
                                double own_cost, double rival_price,
                                double demand_slope);
double simpson_sum(std::span<const double> density, double start, double h,
                   double x, double price, double t);
void parametric_conduct_viability(const ParametricFamily& family,
                                  std::span<const double> A,
                                  std::span<double> M, std::span<double> V);
}  // namespace avx2

}  // namespace centripetal::kernels

#endif  // CENTRIPETAL_KERNELS_HPP_
