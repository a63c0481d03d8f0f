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

#include "sqmarl/marl/shapley_q.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sqmarl::marl {

std::vector<double> masked_joint_action(
    const coopgame::OrderedCoalition& order, int joiner,
    const std::vector<std::vector<double>>& actions) {
  const std::size_t n_agents = actions.size();
  if (n_agents == 0) {
    throw std::invalid_argument("masked_joint_action: no actions");
  }
  const std::size_t n_actions = actions[0].size();
  for (const std::vector<double>& a : actions) {
    if (a.size() != n_actions) {
      throw std::invalid_argument("masked_joint_action: ragged action vectors");
    }
  }
  if (joiner < 0 || joiner >= static_cast<int>(n_agents)) {
    throw std::invalid_argument("masked_joint_action: joiner out of range");
  }
  if (order.size() >= n_agents) {
    throw std::invalid_argument("masked_joint_action: coalition too large");
  }

  std::vector<double> block(n_agents * n_actions, 0.0);
  std::size_t slot = 0;
  for (int member : order.members) {
    if (member < 0 || member >= static_cast<int>(n_agents) || member == joiner) {
      throw std::invalid_argument("masked_joint_action: bad member " +
                                  std::to_string(member));
    }
    std::copy(actions[static_cast<std::size_t>(member)].begin(),
              actions[static_cast<std::size_t>(member)].end(),
              block.begin() + static_cast<std::ptrdiff_t>(slot * n_actions));
    ++slot;
  }
  std::copy(actions[static_cast<std::size_t>(joiner)].begin(),
            actions[static_cast<std::size_t>(joiner)].end(),
            block.begin() + static_cast<std::ptrdiff_t>(slot * n_actions));
  return block;
}

std::vector<double> amc_input(std::span<const double> state,
                              const coopgame::OrderedCoalition& order,
                              int joiner,
                              const std::vector<std::vector<double>>& actions) {
  std::vector<double> input;
  const std::vector<double> block = masked_joint_action(order, joiner, actions);
  input.reserve(state.size() + block.size());
  input.insert(input.end(), state.begin(), state.end());
  input.insert(input.end(), block.begin(), block.end());
  return input;
}

std::size_t joiner_slot_offset(std::size_t state_dim, std::size_t order_size,
                               std::size_t n_actions) {
  return state_dim + order_size * n_actions;
}

double shapley_q_estimate(int joiner, int n_agents, int samples,
                          const AmcEvaluator& evaluate, Rng& rng) {
  if (samples < 1) {
    throw std::invalid_argument("shapley_q_estimate: sample count must be >= 1");
  }
  double total = 0.0;
  for (int m = 0; m < samples; ++m) {
    const coopgame::OrderedCoalition order =
        coopgame::sample_ordered_coalition(rng, joiner, n_agents);
    total += evaluate(order, joiner);
  }
  return total / static_cast<double>(samples);
}

std::vector<std::pair<coopgame::OrderedCoalition, double>>
enumerate_join_orders(int joiner, int n_agents) {
  if (n_agents < 1 || n_agents > 8) {
    throw std::invalid_argument("enumerate_join_orders: team size outside [1, 8]");
  }
  std::vector<int> order(static_cast<std::size_t>(n_agents));
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::pair<coopgame::OrderedCoalition, double>> result;
  long permutations = 0;
  do {
    coopgame::OrderedCoalition prefix;
    for (int a : order) {
      if (a == joiner) break;
      prefix.members.push_back(a);
    }
    ++permutations;
    bool merged = false;
    for (auto& [existing, weight] : result) {
      if (existing.members == prefix.members) {
        weight += 1.0;
        merged = true;
        break;
      }
    }
    if (!merged) result.push_back({std::move(prefix), 1.0});
  } while (std::next_permutation(order.begin(), order.end()));
  for (auto& [prefix, weight] : result) {
    weight /= static_cast<double>(permutations);
  }
  return result;
}

}  // namespace sqmarl::marl
