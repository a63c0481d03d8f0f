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

#include "sqmarl/harness/train.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <filesystem>
#include <ostream>
#include <stdexcept>

#include "sqmarl/env/env.hpp"
#include "sqmarl/marl/baselines.hpp"
#include "sqmarl/marl/replay.hpp"
#include "sqmarl/marl/sqddpg.hpp"

namespace sqmarl::harness {

namespace fs = std::filesystem;
using marl::Algo;

namespace {

void check_finite(double value, const char* what) {
  if (!std::isfinite(value)) {
    throw std::runtime_error(std::string("training aborted: non-finite ") +
                             what);
  }
}

struct Loop {
  marl::Team team;
  std::vector<MetricsRecord> metrics;
};

BundleMeta bundle_meta(const TrainConfig& config, const marl::TeamSpec& spec,
                       long episodes_trained) {
  BundleMeta meta;
  meta.algorithm = config.algorithm;
  meta.environment = config.environment;
  meta.difficulty = config.difficulty;
  meta.config_hash = config_hash(config);
  meta.episodes_trained = episodes_trained;
  meta.n_agents = spec.n_agents;
  meta.obs_dim = spec.obs_dim;
  meta.n_actions = spec.n_actions;
  meta.hidden_units = config.hidden_units;
  meta.sample_size = config.sample_size;
  return meta;
}

// `periodic_dir` non-empty: overwrite a rolling checkpoint there every fifth
// of the run.
Loop run_loop(const TrainConfig& config, std::ostream* log,
              const std::string& periodic_dir = "") {
  validate_config(config);
  const Algo algo = marl::parse_algo(config.algorithm);
  const env::EnvSpec espec = env::env_spec(config.environment, config.difficulty);
  const marl::TeamSpec spec{espec.n_agents, espec.obs_dim, espec.n_actions};

  // Independent deterministic streams: weights, environment, training.
  Rng rng_init(split_seed(config.seed, 0));
  Rng rng_env(split_seed(config.seed, 1));
  Rng rng_train(split_seed(config.seed, 2));

  Loop loop;
  loop.team = marl::make_team(algo, spec, config.hidden_units, config.actor_lr,
                              config.critic_lr, rng_init);
  marl::Team& team = loop.team;

  std::unique_ptr<env::Env> environment =
      env::make_env(config.environment, config.difficulty);
  marl::ReplayBuffer buffer(static_cast<std::size_t>(config.replay_capacity));
  marl::Rollout segment;  // on-policy algorithms only

  const bool off_policy = marl::is_off_policy(algo);
  long global_step = 0;

  for (long episode = 0; episode < config.episodes; ++episode) {
    env::EnvStep current = environment->reset(rng_env);
    double episode_return = 0.0;
    long steps = 0;
    bool captured = false;
    bool clean_traffic = true;

    for (int t = 0; t < config.episode_length; ++t) {
      const std::vector<std::vector<double>> actions =
          marl::select_actions(team, current.global_state, /*explore=*/true,
                               rng_train);
      const env::EnvStep next =
          environment->step(marl::action_indices(actions), rng_env);

      marl::Transition transition;
      transition.state = current.global_state;
      transition.actions = actions;
      transition.reward = next.reward;
      transition.next_state = next.global_state;
      transition.done = next.done;

      episode_return += next.reward;
      ++steps;
      ++global_step;
      captured = captured || next.info.captured;
      clean_traffic = next.info.episode_collisions == 0;

      if (off_policy) {
        buffer.push(std::move(transition));
        if (global_step % config.behaviour_update_freq == 0 &&
            buffer.size() >= static_cast<std::size_t>(config.batch_size)) {
          const marl::Batch batch =
              buffer.sample(static_cast<std::size_t>(config.batch_size), rng_train);
          // Policies first, then critics.
          double norm = 0.0, loss = 0.0;
          if (algo == Algo::kSqddpg) {
            norm = marl::sqddpg_actor_update(team, batch, config.sample_size,
                                             rng_train);
            loss = marl::sqddpg_critic_update(team, batch, config.sample_size,
                                              config.gamma, rng_train);
          } else {
            norm = marl::ddpg_actor_update(team, batch, rng_train);
            loss = marl::ddpg_critic_update(team, batch, config.gamma);
          }
          check_finite(norm, "actor gradient norm");
          check_finite(loss, "critic loss");
        }
      } else {
        segment.push_back(std::move(transition));
        if (global_step % config.behaviour_update_freq == 0) {
          const marl::OnPolicyLosses losses =
              algo == Algo::kIa2c
                  ? marl::ia2c_update(team, segment, config.gamma,
                                      config.entropy_coef)
                  : marl::coma_update(team, segment, config.gamma,
                                      config.entropy_coef);
          check_finite(losses.policy, "policy loss");
          check_finite(losses.value, "value loss");
          segment.clear();
        }
      }

      if (marl::has_targets(algo) &&
          global_step % config.target_update_freq == 0) {
        marl::team_soft_update(team, config.target_tau);
      }

      current = next;
      if (next.done) break;
    }

    MetricsRecord record;
    record.episode = episode;
    record.steps = steps;
    record.mean_step_reward = episode_return / static_cast<double>(steps);
    record.episode_return = episode_return;
    record.turns_to_capture = captured ? steps : config.episode_length;
    if (config.environment == "prey") {
      record.success = captured ? 1 : 0;
    } else if (config.environment == "traffic") {
      record.success = clean_traffic ? 1 : 0;
    }
    loop.metrics.push_back(record);

    const long checkpoint_every = std::max(1L, config.episodes / 5);
    if (!periodic_dir.empty() && (episode + 1) % checkpoint_every == 0 &&
        episode + 1 < config.episodes) {
      save_bundle(periodic_dir, team, bundle_meta(config, spec, episode + 1));
    }

    if (log != nullptr && (episode + 1) % 100 == 0) {
      const std::size_t window = std::min<std::size_t>(loop.metrics.size(), 100);
      double mean = 0.0;
      for (std::size_t k = loop.metrics.size() - window; k < loop.metrics.size(); ++k) {
        mean += loop.metrics[k].mean_step_reward;
      }
      mean /= static_cast<double>(window);
      (*log) << "episode " << (episode + 1) << "/" << config.episodes
             << " mean step reward (last " << window << "): " << mean << '\n';
      log->flush();
    }
  }
  return loop;
}

}  // namespace

TrainedTeam train_in_memory(const TrainConfig& config, std::ostream* log) {
  Loop loop = run_loop(config, log);
  return TrainedTeam{std::move(loop.team), std::move(loop.metrics)};
}

TrainOutput run_training(const TrainConfig& config, const std::string& out_dir,
                         std::ostream* log) {
  const auto started = std::chrono::steady_clock::now();
  fs::create_directories(out_dir);

  Loop loop = run_loop(
      config, log, (fs::path(out_dir) / "checkpoint_periodic").string());

  TrainOutput output;
  output.metrics = std::move(loop.metrics);
  output.metrics_path = (fs::path(out_dir) / "metrics.csv").string();
  write_metrics_csv(output.metrics_path, output.metrics);

  output.checkpoint_dir = (fs::path(out_dir) / "checkpoint").string();
  save_bundle(output.checkpoint_dir, loop.team,
              bundle_meta(config, loop.team.spec, config.episodes));

  output.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - started)
          .count();
  if (log != nullptr) {
    (*log) << "training finished in " << output.wall_seconds << " s, metrics at "
           << output.metrics_path << '\n';
  }
  return output;
}

}  // namespace sqmarl::harness
