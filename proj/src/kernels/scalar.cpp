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

#include "centripetal/kernels.hpp"

#include <limits>

namespace centripetal::kernels::scalar {

std::size_t best_response_index(std::span<const double> prices,
                                double own_cost, double rival_price,
                                double demand_slope) {
  std::size_t best = 0;
  double best_value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < prices.size(); ++i) {
    const double p = prices[i];
    const double markup = p - own_cost;
    double demand = 0.5 + demand_slope * (rival_price - p);
    demand = demand > 0.0 ? demand : 0.0;
    demand = demand < 1.0 ? demand : 1.0;
    const double profit = markup * demand;
    if (profit > best_value) {
      best_value = profit;
      best = i;
    }
  }
  return best;
}

double simpson_sum(std::span<const double> density, double start, double h,
                   double x, double price, double t) {
  const std::size_t n = density.size();
  double acc = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double theta = start + static_cast<double>(i) * h;
    const double gap = theta - x;
    const double value = density[i] * (-price - t * (gap * gap));
    const double w = (i == 0 || i + 1 == n) ? 1.0 : ((i & 1) ? 4.0 : 2.0);
    acc += w * value;
  }
  return acc * (h / 3.0);
}

void parametric_conduct_viability(const ParametricFamily& f,
                                  std::span<const double> A,
                                  std::span<double> M, std::span<double> V) {
  for (std::size_t i = 0; i < A.size(); ++i) {
    const double t = f.tau0 / (1.0 + f.beta * A[i]);
    const double kappa = f.kappa0 * (1.0 + f.gamma * A[i]);
    const double F = f.F0 + f.phi * A[i];
    const double m = t * (t / kappa);
    M[i] = m;
    V[i] = m / 4.0 - F;
  }
}

}  // namespace centripetal::kernels::scalar
