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

#ifndef SQMARL_MARL_NETS_HPP
#define SQMARL_MARL_NETS_HPP

#include <span>
#include <string>
#include <vector>

#include "sqmarl/nn/adam.hpp"
#include "sqmarl/nn/mlp.hpp"
#include "sqmarl/rng.hpp"

namespace sqmarl::marl {

enum class Algo { kSqddpg, kIddpg, kMaddpg, kIa2c, kComa };

Algo parse_algo(const std::string& name);
std::string algo_name(Algo algo);

// True for the deterministic-policy family trained off-policy from replay.
bool is_off_policy(Algo algo);
// True when the algorithm keeps target copies of its networks.
bool has_targets(Algo algo);

struct TeamSpec {
  int n_agents = 0;
  int obs_dim = 0;
  int n_actions = 0;
  int state_dim() const { return n_agents * obs_dim; }
};

// Per-algorithm critic shapes. Centralized critics read the global state;
// decentralized ones read the owner's observation alone.
int critic_in_dim(Algo algo, const TeamSpec& spec);
int critic_out_dim(Algo algo, const TeamSpec& spec);

struct AgentNet {
  nn::Mlp actor;
  nn::Mlp actor_target;
  nn::Mlp critic;
  nn::Mlp critic_target;
  nn::AdamState actor_opt;
  nn::AdamState critic_opt;
};

/// All per-agent networks for one algorithm instance.
struct Team {
  Algo algo = Algo::kSqddpg;
  TeamSpec spec;
  std::vector<AgentNet> agents;
};

Team make_team(Algo algo, const TeamSpec& spec, int hidden_units,
               double actor_lr, double critic_lr, Rng& rng);

// Blends every target network toward its live copy.
void team_soft_update(Team& team, double tau);

std::span<const double> obs_slice(const TeamSpec& spec,
                                  std::span<const double> state, int agent);

/// Behaviour policy: with exploration, a Gumbel-Softmax draw of each actor's
/// logits taken straight-through to a one-hot; greedy otherwise. Reads only
/// the actors, never a critic.
std::vector<std::vector<double>> select_actions(const Team& team,
                                                std::span<const double> state,
                                                bool explore, Rng& rng);

std::vector<int> action_indices(const std::vector<std::vector<double>>& onehots);

}  // namespace sqmarl::marl

#endif  // SQMARL_MARL_NETS_HPP
