// Copyright 2026 The sqmarl Authors
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

#include "sqmarl/coopgame/shapley.hpp"

#include <array>
#include <bit>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sqmarl::coopgame {

namespace {

// 0! .. 12!, all exactly representable in double precision.
constexpr std::array<double, 13> kFactorial = {
    1.0,      1.0,       2.0,        6.0,        24.0,
    120.0,    720.0,     5040.0,     40320.0,    362880.0,
    3628800.0, 39916800.0, 479001600.0};

void check_exact_capacity(int n, const char* op) {
  if (n > kMaxExactAgents) {
    throw std::invalid_argument(
        std::string(op) + ": " + std::to_string(n) +
        " agents exceeds the exact-enumeration limit of " +
        std::to_string(kMaxExactAgents));
  }
}

}  // namespace

double coalition_weight(int n, int coalition_size) {
  if (n < 1) throw std::invalid_argument("coalition_weight: n must be >= 1");
  check_exact_capacity(n, "coalition_weight");
  if (coalition_size < 0 || coalition_size >= n) {
    throw std::invalid_argument(
        "coalition_weight: coalition size " + std::to_string(coalition_size) +
        " outside [0, n-1] for n = " + std::to_string(n));
  }
  return kFactorial[coalition_size] * kFactorial[n - coalition_size - 1] /
         kFactorial[n];
}

PayoffVector exact_shapley(const CharacteristicGame& game) {
  const int n = game.num_agents();
  check_exact_capacity(n, "exact_shapley");
  const std::size_t size = game.num_coalitions();
  // Weight by coalition size, shared across agents.
  std::array<double, kMaxExactAgents> weight{};
  for (int c = 0; c < n; ++c) weight[c] = coalition_weight(n, c);

  const std::vector<double>& v = game.values();
  PayoffVector shapley(n, 0.0);
  for (int i = 0; i < n; ++i) {
    const std::size_t bit = std::size_t{1} << i;
    double sum = 0.0;
    for (std::size_t c = 0; c < size; ++c) {
      if (c & bit) continue;
      sum += weight[std::popcount(c)] * (v[c | bit] - v[c]);
    }
    shapley[static_cast<std::size_t>(i)] = sum;
  }
  return shapley;
}

OrderedCoalition sample_ordered_coalition(Rng& rng, int joiner, int n) {
  if (n < 1) {
    throw std::invalid_argument("sample_ordered_coalition: n must be >= 1");
  }
  if (joiner < 0 || joiner >= n) {
    throw std::invalid_argument("sample_ordered_coalition: joiner " +
                                std::to_string(joiner) + " out of range");
  }
  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  rng.shuffle(order);
  OrderedCoalition result;
  result.members.reserve(static_cast<std::size_t>(n) - 1);
  for (int a : order) {
    if (a == joiner) break;
    result.members.push_back(a);
  }
  return result;
}

McShapleyEstimate monte_carlo_shapley_detail(const CharacteristicGame& game,
                                             int agent, long samples,
                                             Rng& rng) {
  if (samples < 1) {
    throw std::invalid_argument("monte_carlo_shapley: sample count must be >= 1");
  }
  const int n = game.num_agents();
  // Welford accumulation for mean and variance of the sampled contributions.
  double mean = 0.0;
  double m2 = 0.0;
  for (long k = 1; k <= samples; ++k) {
    const OrderedCoalition c = sample_ordered_coalition(rng, agent, n);
    const double delta_v = marginal_contribution(game, c.mask(), agent);
    const double d = delta_v - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (delta_v - mean);
  }
  McShapleyEstimate est;
  est.mean = mean;
  est.sample_std =
      samples > 1 ? std::sqrt(m2 / static_cast<double>(samples - 1)) : 0.0;
  return est;
}

double monte_carlo_shapley(const CharacteristicGame& game, int agent,
                           long samples, Rng& rng) {
  return monte_carlo_shapley_detail(game, agent, samples, rng).mean;
}

}  // namespace sqmarl::coopgame
