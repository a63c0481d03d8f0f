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

#ifndef SQMARL_MARL_SHAPLEY_Q_HPP
#define SQMARL_MARL_SHAPLEY_Q_HPP

#include <functional>
#include <span>
#include <vector>

#include "sqmarl/coopgame/shapley.hpp"
#include "sqmarl/rng.hpp"

namespace sqmarl::marl {

/// Fixed-length action block for a marginal-contribution critic. Slot k of
/// the block carries the action of the k-th agent in the join order —
/// coalition members first, the joiner last — and the slots of agents
/// outside the coalition stay zero, so the input size never varies.
std::vector<double> masked_joint_action(
    const coopgame::OrderedCoalition& order, int joiner,
    const std::vector<std::vector<double>>& actions);

/// Critic input: global state followed by the masked ordered action block.
std::vector<double> amc_input(std::span<const double> state,
                              const coopgame::OrderedCoalition& order,
                              int joiner,
                              const std::vector<std::vector<double>>& actions);

// Offset of the joiner's action inside the block (it sits after the
// coalition members), relative to the start of the whole critic input.
std::size_t joiner_slot_offset(std::size_t state_dim, std::size_t order_size,
                               std::size_t n_actions);

/// One marginal-contribution evaluation for a sampled join order. Production
/// code binds a trained critic network; validation binds an exact
/// characteristic-game lookup.
using AmcEvaluator =
    std::function<double(const coopgame::OrderedCoalition& order, int joiner)>;

/// Sampled Shapley Q-value: the mean evaluator output over `samples` join
/// orders drawn uniformly for the given joiner.
double shapley_q_estimate(int joiner, int n_agents, int samples,
                          const AmcEvaluator& evaluate, Rng& rng);

/// All join orders a permutation can induce for `joiner`, paired with their
/// probabilities; exact expectation companion to shapley_q_estimate for
/// small team sizes.
std::vector<std::pair<coopgame::OrderedCoalition, double>>
enumerate_join_orders(int joiner, int n_agents);

}  // namespace sqmarl::marl

#endif  // SQMARL_MARL_SHAPLEY_Q_HPP
