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

#ifndef SQMARL_MARL_SQDDPG_HPP
#define SQMARL_MARL_SQDDPG_HPP

#include <span>
#include <vector>

#include "sqmarl/marl/nets.hpp"
#include "sqmarl/marl/replay.hpp"
#include "sqmarl/marl/shapley_q.hpp"

namespace sqmarl::marl {

using Batch = std::vector<const Transition*>;

/// The join orders sampled for one update: orders[k][i] holds agent i's M
/// orders for minibatch item k, drawn fresh per item and reused between the
/// live and target critic passes of the same update.
struct CoalitionDraws {
  std::vector<std::vector<std::vector<coopgame::OrderedCoalition>>> orders;
};

CoalitionDraws draw_coalitions(std::size_t batch, int n_agents, int samples,
                               Rng& rng);

/// Gumbel noise for the relaxed policy actions recomputed during an actor
/// update: noise[k][j] belongs to agent j on minibatch item k. Drawing it
/// up front lets finite differences replay the exact same objective.
struct ActorNoise {
  std::vector<std::vector<std::vector<double>>> noise;
};

ActorNoise draw_actor_noise(std::size_t batch, const TeamSpec& spec, Rng& rng);

/// Mean sampled Shapley Q-value of one agent over the batch, with every
/// agent's action recomputed from its current policy through the relaxed
/// sampler at temperature one.
double sqddpg_actor_objective(const Team& team, int agent, const Batch& batch,
                              const CoalitionDraws& draws,
                              const ActorNoise& noise);

/// d(objective)/d(actor parameters); the value gradient flows only through
/// the joiner's slot of each sampled critic input.
nn::MlpGrads sqddpg_actor_gradient(const Team& team, int agent,
                                   const Batch& batch,
                                   const CoalitionDraws& draws,
                                   const ActorNoise& noise);

/// Efficiency-constrained TD loss: the squared gap between
/// r + gamma * sum-of-target-Shapley-Q at the next state (dropped on
/// terminal steps) and the summed live Shapley Q at the stored actions.
double sqddpg_critic_loss(const Team& team, const Batch& batch,
                          const CoalitionDraws& draws, double gamma);

std::vector<nn::MlpGrads> sqddpg_critic_gradients(const Team& team,
                                                  const Batch& batch,
                                                  const CoalitionDraws& draws,
                                                  double gamma);

/// One gradient-ascent Adam step on every actor from a common snapshot;
/// returns the mean gradient norm. Draws M join orders per agent and fresh
/// relaxation noise.
double sqddpg_actor_update(Team& team, const Batch& batch, int samples,
                           Rng& rng);

/// One Adam step on every agent's critic; returns the pre-step loss.
double sqddpg_critic_update(Team& team, const Batch& batch, int samples,
                            double gamma, Rng& rng);

/// Sampled Shapley Q-value of an agent's critic at a fixed state and joint
/// action (analysis-time credit).
double sqddpg_sampled_q(const Team& team, int agent,
                        std::span<const double> state,
                        const std::vector<std::vector<double>>& actions,
                        int samples, Rng& rng);

/// Exact expectation over all join orders (team sizes up to 8).
double sqddpg_exact_q(const Team& team, int agent,
                      std::span<const double> state,
                      const std::vector<std::vector<double>>& actions,
                      bool use_target = false);

}  // namespace sqmarl::marl

#endif  // SQMARL_MARL_SQDDPG_HPP
