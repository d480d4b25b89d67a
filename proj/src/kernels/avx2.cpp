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

// Compiled with -mavx2 only. Callers reach these through the dispatcher, which
// checks CPUID first.

#include <immintrin.h>

#include <limits>

#include "centripetal/kernels.hpp"

namespace centripetal::kernels::avx2 {

std::size_t best_response_index(std::span<const double> prices,
                                double own_cost, double rival_price,
                                double demand_slope) {
  const std::size_t n = prices.size();
  const double* p = prices.data();
  const __m256d vc = _mm256_set1_pd(own_cost);
  const __m256d vr = _mm256_set1_pd(rival_price);
  const __m256d vk = _mm256_set1_pd(demand_slope);
  const __m256d half = _mm256_set1_pd(0.5);
  const __m256d zero = _mm256_setzero_pd();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d four = _mm256_set1_pd(4.0);

  __m256d best_value =
      _mm256_set1_pd(-std::numeric_limits<double>::infinity());
  __m256d best_index = _mm256_set1_pd(0.0);
  __m256d index = _mm256_setr_pd(0.0, 1.0, 2.0, 3.0);

  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d price = _mm256_loadu_pd(p + i);
    const __m256d markup = _mm256_sub_pd(price, vc);
    __m256d demand =
        _mm256_add_pd(half, _mm256_mul_pd(vk, _mm256_sub_pd(vr, price)));
    demand = _mm256_max_pd(demand, zero);
    demand = _mm256_min_pd(demand, one);
    const __m256d profit = _mm256_mul_pd(markup, demand);
    const __m256d better = _mm256_cmp_pd(profit, best_value, _CMP_GT_OQ);
    best_value = _mm256_blendv_pd(best_value, profit, better);
    best_index = _mm256_blendv_pd(best_index, index, better);
    index = _mm256_add_pd(index, four);
  }

  alignas(32) double lane_value[4];
  alignas(32) double lane_index[4];
  _mm256_store_pd(lane_value, best_value);
  _mm256_store_pd(lane_index, best_index);

  std::size_t best = 0;
  double best_scalar = -std::numeric_limits<double>::infinity();
  for (int lane = 0; lane < 4; ++lane) {
    const auto idx = static_cast<std::size_t>(lane_index[lane]);
    if (lane_value[lane] > best_scalar ||
        (lane_value[lane] == best_scalar && idx < best)) {
      best_scalar = lane_value[lane];
      best = idx;
    }
  }
  for (; i < n; ++i) {
    const double price = p[i];
    const double markup = price - own_cost;
    double demand = 0.5 + demand_slope * (rival_price - price);
    demand = demand > 0.0 ? demand : 0.0;
    demand = demand < 1.0 ? demand : 1.0;
    const double profit = markup * demand;
    if (profit > best_scalar) {
      best_scalar = profit;
      best = i;
    }
  }
  return best;
}

double simpson_sum(std::span<const double> density, double start, double h,
                   double x, double price, double t) {
  const std::size_t n = density.size();
  if (n == 0) return 0.0;
  const double* dens = density.data();

  auto node = [&](std::size_t i) {
    const double theta = start + static_cast<double>(i) * h;
    const double gap = theta - x;
    return dens[i] * (-price - t * (gap * gap));
  };

  double acc = node(0);
  if (n == 1) return acc * (h / 3.0);
  acc += node(n - 1);

  // Interior nodes 1..n-2 carry weights 4, 2, 4, 2, ...
  const __m256d vstart = _mm256_set1_pd(start);
  const __m256d vh = _mm256_set1_pd(h);
  const __m256d vx = _mm256_set1_pd(x);
  const __m256d vneg_price = _mm256_set1_pd(-price);
  const __m256d vt = _mm256_set1_pd(t);
  const __m256d weights = _mm256_setr_pd(4.0, 2.0, 4.0, 2.0);
  const __m256d four = _mm256_set1_pd(4.0);
  __m256d sum = _mm256_setzero_pd();

  std::size_t i = 1;
  __m256d index = _mm256_setr_pd(1.0, 2.0, 3.0, 4.0);
  for (; i + 4 <= n - 1; i += 4) {
    const __m256d theta = _mm256_add_pd(vstart, _mm256_mul_pd(index, vh));
    const __m256d gap = _mm256_sub_pd(theta, vx);
    const __m256d value = _mm256_mul_pd(
        _mm256_loadu_pd(dens + i),
        _mm256_sub_pd(vneg_price, _mm256_mul_pd(vt, _mm256_mul_pd(gap, gap))));
    sum = _mm256_add_pd(sum, _mm256_mul_pd(weights, value));
    index = _mm256_add_pd(index, four);
  }
  alignas(32) double lanes[4];
  _mm256_store_pd(lanes, sum);
  double interior = (lanes[0] + lanes[1]) + (lanes[2] + lanes[3]);
  for (; i < n - 1; ++i) interior += ((i & 1) ? 4.0 : 2.0) * node(i);
  return (acc + interior) * (h / 3.0);
}

void parametric_conduct_viability(const ParametricFamily& f,
                                  std::span<const double> A,
                                  std::span<double> M, std::span<double> V) {
  const std::size_t n = A.size();
  const __m256d one = _mm256_set1_pd(1.0);
  const __m256d four = _mm256_set1_pd(4.0);
  const __m256d tau0 = _mm256_set1_pd(f.tau0);
  const __m256d beta = _mm256_set1_pd(f.beta);
  const __m256d kappa0 = _mm256_set1_pd(f.kappa0);
  const __m256d gamma = _mm256_set1_pd(f.gamma);
  const __m256d F0 = _mm256_set1_pd(f.F0);
  const __m256d phi = _mm256_set1_pd(f.phi);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_loadu_pd(A.data() + i);
    const __m256d t =
        _mm256_div_pd(tau0, _mm256_add_pd(one, _mm256_mul_pd(beta, a)));
    const __m256d kappa =
        _mm256_mul_pd(kappa0, _mm256_add_pd(one, _mm256_mul_pd(gamma, a)));
    const __m256d F = _mm256_add_pd(F0, _mm256_mul_pd(phi, a));
    const __m256d m = _mm256_mul_pd(t, _mm256_div_pd(t, kappa));
    _mm256_storeu_pd(M.data() + i, m);
    _mm256_storeu_pd(V.data() + i,
                     _mm256_sub_pd(_mm256_div_pd(m, four), F));
  }
  if (i < n) {
    scalar::parametric_conduct_viability(f, A.subspan(i), M.subspan(i),
                                         V.subspan(i));
  }
}

}  // namespace centripetal::kernels::avx2
