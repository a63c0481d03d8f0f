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

#include "sqmarl/marl/nets.hpp"

#include <stdexcept>

#include "sqmarl/nn/gumbel.hpp"

namespace sqmarl::marl {

Algo parse_algo(const std::string& name) {
  if (name == "sqddpg") return Algo::kSqddpg;
  if (name == "iddpg") return Algo::kIddpg;
  if (name == "maddpg") return Algo::kMaddpg;
  if (name == "ia2c") return Algo::kIa2c;
  if (name == "coma") return Algo::kComa;
  throw std::invalid_argument("parse_algo: unknown algorithm '" + name + "'");
}

std::string algo_name(Algo algo) {
  switch (algo) {
    case Algo::kSqddpg: return "sqddpg";
    case Algo::kIddpg: return "iddpg";
    case Algo::kMaddpg: return "maddpg";
    case Algo::kIa2c: return "ia2c";
    case Algo::kComa: return "coma";
  }
  throw std::logic_error("algo_name: bad enum");
}

bool is_off_policy(Algo algo) {
  return algo == Algo::kSqddpg || algo == Algo::kIddpg || algo == Algo::kMaddpg;
}

bool has_targets(Algo algo) { return algo != Algo::kIa2c; }

int critic_in_dim(Algo algo, const TeamSpec& spec) {
  switch (algo) {
    case Algo::kSqddpg:  // state plus the zero-masked ordered action block
      return spec.state_dim() + spec.n_agents * spec.n_actions;
    case Algo::kIddpg:  // own observation and own action
      return spec.obs_dim + spec.n_actions;
    case Algo::kMaddpg:  // state plus every agent's action
      return spec.state_dim() + spec.n_agents * spec.n_actions;
    case Algo::kIa2c:  // state-value of the own observation
      return spec.obs_dim;
    case Algo::kComa:  // state, other agents' actions, owner one-hot
      return spec.state_dim() + spec.n_agents * spec.n_actions + spec.n_agents;
  }
  throw std::logic_error("critic_in_dim: bad enum");
}

int critic_out_dim(Algo algo, const TeamSpec& spec) {
  // COMA scores every own action at once; the others emit one value.
  return algo == Algo::kComa ? spec.n_actions : 1;
}

Team make_team(Algo algo, const TeamSpec& spec, int hidden_units,
               double actor_lr, double critic_lr, Rng& rng) {
  if (spec.n_agents < 1 || spec.obs_dim < 1 || spec.n_actions < 2) {
    throw std::invalid_argument("make_team: bad team spec");
  }
  Team team;
  team.algo = algo;
  team.spec = spec;
  team.agents.reserve(static_cast<std::size_t>(spec.n_agents));
  for (int i = 0; i < spec.n_agents; ++i) {
    AgentNet agent;
    agent.actor = nn::make_mlp(spec.obs_dim, hidden_units, spec.n_actions, rng);
    agent.critic = nn::make_mlp(critic_in_dim(algo, spec), hidden_units,
                                critic_out_dim(algo, spec), rng);
    agent.actor_target = agent.actor;
    agent.critic_target = agent.critic;
    agent.actor_opt = nn::make_adam(agent.actor, actor_lr);
    agent.critic_opt = nn::make_adam(agent.critic, critic_lr);
    team.agents.push_back(std::move(agent));
  }
  return team;
}

void team_soft_update(Team& team, double tau) {
  for (AgentNet& agent : team.agents) {
    nn::soft_update(agent.actor_target, agent.actor, tau);
    nn::soft_update(agent.critic_target, agent.critic, tau);
  }
}

std::span<const double> obs_slice(const TeamSpec& spec,
                                  std::span<const double> state, int agent) {
  if (state.size() != static_cast<std::size_t>(spec.state_dim())) {
    throw std::invalid_argument("obs_slice: state has wrong length");
  }
  if (agent < 0 || agent >= spec.n_agents) {
    throw std::invalid_argument("obs_slice: agent out of range");
  }
  return state.subspan(static_cast<std::size_t>(agent * spec.obs_dim),
                       static_cast<std::size_t>(spec.obs_dim));
}

std::vector<std::vector<double>> select_actions(const Team& team,
                                                std::span<const double> state,
                                                bool explore, Rng& rng) {
  std::vector<std::vector<double>> actions;
  actions.reserve(team.agents.size());
  for (int i = 0; i < team.spec.n_agents; ++i) {
    const std::vector<double> logits = nn::mlp_forward(
        team.agents[static_cast<std::size_t>(i)].actor, obs_slice(team.spec, state, i));
    if (explore) {
      const std::vector<double> sample = nn::gumbel_softmax_sample(logits, 1.0, rng);
      actions.push_back(nn::onehot_argmax(sample));
    } else {
      actions.push_back(nn::onehot_argmax(logits));
    }
  }
  return actions;
}

std::vector<int> action_indices(const std::vector<std::vector<double>>& onehots) {
  std::vector<int> out;
  out.reserve(onehots.size());
  for (const std::vector<double>& a : onehots) {
    out.push_back(static_cast<int>(nn::argmax(a)));
  }
  return out;
}

}  // namespace sqmarl::marl
