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

#ifndef SQMARL_COOPGAME_SHAPLEY_HPP
#define SQMARL_COOPGAME_SHAPLEY_HPP

#include <vector>

#include "sqmarl/coopgame/game.hpp"
#include "sqmarl/rng.hpp"

namespace sqmarl::coopgame {

/// The join order an agent finds already formed when it enters the grand
/// coalition: a sequence of distinct agent indices excluding the joiner.
/// May be empty (the agent joins first).
struct OrderedCoalition {
  std::vector<int> members;

  Mask mask() const {
    Mask m = 0;
    for (int a : members) m |= static_cast<Mask>(1u) << a;
    return m;
  }
  std::size_t size() const { return members.size(); }
};

/// Probability that a uniformly random join order places exactly the members
/// of a fixed size-c coalition before a given agent: c!(n-c-1)!/n!.
/// Summed over all 2^(n-1) coalitions of the remaining agents this is 1.
double coalition_weight(int n, int coalition_size);

/// The weighted average of an agent's marginal contributions over all
/// coalitions it could join. Efficient: the entries sum to v of the grand
/// coalition. Requires n <= kMaxExactAgents.
PayoffVector exact_shapley(const CharacteristicGame& game);

/// Draws a uniform random permutation of all n agents and returns the prefix
/// preceding `joiner`, in order. The induced subset distribution equals
/// coalition_weight.
OrderedCoalition sample_ordered_coalition(Rng& rng, int joiner, int n);

struct McShapleyEstimate {
  double mean = 0.0;
  double sample_std = 0.0;  // std of the per-draw marginal contributions
};

/// Unbiased permutation-sampling estimate of one agent's Shapley value:
/// the mean marginal contribution over `samples` random join orders.
McShapleyEstimate monte_carlo_shapley_detail(const CharacteristicGame& game,
                                             int agent, long samples,
                                             Rng& rng);

double monte_carlo_shapley(const CharacteristicGame& game, int agent,
                           long samples, Rng& rng);

}  // namespace sqmarl::coopgame

#endif  // SQMARL_COOPGAME_SHAPLEY_HPP
