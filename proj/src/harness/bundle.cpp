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

#include "sqmarl/harness/bundle.hpp"

#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "json.hpp"
#include "sqmarl/nn/checkpoint.hpp"

namespace sqmarl::harness {

namespace fs = std::filesystem;
using nlohmann::json;

void save_bundle(const std::string& dir, const marl::Team& team,
                 const BundleMeta& meta) {
  fs::create_directories(dir);
  json manifest = {
      {"algorithm", meta.algorithm},
      {"environment", meta.environment},
      {"difficulty", meta.difficulty},
      {"config_hash", meta.config_hash},
      {"episodes_trained", meta.episodes_trained},
      {"n_agents", meta.n_agents},
      {"obs_dim", meta.obs_dim},
      {"n_actions", meta.n_actions},
      {"hidden_units", meta.hidden_units},
      {"sample_size", meta.sample_size},
  };
  std::ofstream out(fs::path(dir) / "manifest.json");
  if (!out) throw std::runtime_error("save_bundle: cannot write manifest in " + dir);
  out << manifest.dump(2) << '\n';

  for (std::size_t i = 0; i < team.agents.size(); ++i) {
    const std::string tag = std::to_string(i);
    nn::save_mlp((fs::path(dir) / ("actor_" + tag + ".nn")).string(),
                 team.agents[i].actor);
    nn::save_mlp((fs::path(dir) / ("critic_" + tag + ".nn")).string(),
                 team.agents[i].critic);
  }
}

LoadedBundle load_bundle(const std::string& dir) {
  std::ifstream in(fs::path(dir) / "manifest.json");
  if (!in) throw std::runtime_error("load_bundle: no manifest in " + dir);
  json manifest;
  in >> manifest;

  BundleMeta meta;
  meta.algorithm = manifest.at("algorithm").get<std::string>();
  meta.environment = manifest.at("environment").get<std::string>();
  meta.difficulty = manifest.at("difficulty").get<std::string>();
  meta.config_hash = manifest.at("config_hash").get<std::string>();
  meta.episodes_trained = manifest.at("episodes_trained").get<long>();
  meta.n_agents = manifest.at("n_agents").get<int>();
  meta.obs_dim = manifest.at("obs_dim").get<int>();
  meta.n_actions = manifest.at("n_actions").get<int>();
  meta.hidden_units = manifest.at("hidden_units").get<int>();
  meta.sample_size = manifest.at("sample_size").get<int>();

  const marl::Algo algo = marl::parse_algo(meta.algorithm);
  const marl::TeamSpec spec{meta.n_agents, meta.obs_dim, meta.n_actions};

  marl::Team team;
  team.algo = algo;
  team.spec = spec;
  for (int i = 0; i < meta.n_agents; ++i) {
    const std::string tag = std::to_string(i);
    marl::AgentNet agent;
    agent.actor = nn::load_mlp((fs::path(dir) / ("actor_" + tag + ".nn")).string());
    agent.critic = nn::load_mlp((fs::path(dir) / ("critic_" + tag + ".nn")).string());
    if (agent.actor.in_dim != spec.obs_dim ||
        agent.actor.out_dim != spec.n_actions ||
        agent.critic.in_dim != marl::critic_in_dim(algo, spec) ||
        agent.critic.out_dim != marl::critic_out_dim(algo, spec)) {
      throw std::runtime_error("load_bundle: blob shapes disagree with manifest");
    }
    agent.actor_target = agent.actor;
    agent.critic_target = agent.critic;
    agent.actor_opt = nn::make_adam(agent.actor, 1e-3);
    agent.critic_opt = nn::make_adam(agent.critic, 1e-3);
    team.agents.push_back(std::move(agent));
  }
  return LoadedBundle{std::move(team), std::move(meta)};
}

}  // namespace sqmarl::harness
