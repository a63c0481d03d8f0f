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

#ifndef SQMARL_MARL_BASELINES_HPP
#define SQMARL_MARL_BASELINES_HPP

#include <span>
#include <vector>

#include "sqmarl/marl/nets.hpp"
#include "sqmarl/marl/replay.hpp"
#include "sqmarl/marl/sqddpg.hpp"

namespace sqmarl::marl {

// Critic input builders shared with the analysis tooling. IDDPG critics see
// the owner's observation and action; MADDPG critics the state and every
// agent's action; COMA critics the state, the other agents' actions (owner
// slot zeroed) and the owner's index one-hot.
std::vector<double> iddpg_critic_input(const TeamSpec& spec, int agent,
                                       std::span<const double> state,
                                       const std::vector<std::vector<double>>& actions);
std::vector<double> maddpg_critic_input(const TeamSpec& spec,
                                        std::span<const double> state,
                                        const std::vector<std::vector<double>>& actions);
std::vector<double> coma_critic_input(const TeamSpec& spec, int agent,
                                      std::span<const double> state,
                                      const std::vector<std::vector<double>>& actions);

/// Per-agent TD update against the shared global reward for the
/// deterministic-policy baselines (IDDPG and MADDPG). Returns the mean loss.
double ddpg_critic_update(Team& team, const Batch& batch, double gamma);

/// Policy-gradient ascent through each agent's relaxed action; returns the
/// mean gradient norm.
double ddpg_actor_update(Team& team, const Batch& batch, Rng& rng);

/// One on-policy segment, in execution order. Steps may span episode
/// boundaries; returns restart at terminal flags.
using Rollout = std::vector<Transition>;

struct OnPolicyLosses {
  double policy = 0.0;
  double value = 0.0;
};

/// Advantage actor-critic per agent with decentralized state-value critics
/// and entropy regularization.
OnPolicyLosses ia2c_update(Team& team, const Rollout& rollout, double gamma,
                           double entropy_coef);

/// Counterfactual-baseline policy gradient: each agent's advantage is its
/// chosen-action Q minus the policy expectation of Q over its own actions,
/// holding the other agents' actions fixed.
OnPolicyLosses coma_update(Team& team, const Rollout& rollout, double gamma,
                           double entropy_coef);

double entropy(std::span<const double> probs);

}  // namespace sqmarl::marl

#endif  // SQMARL_MARL_BASELINES_HPP
