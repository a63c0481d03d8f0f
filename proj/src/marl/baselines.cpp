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

#include "sqmarl/marl/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "sqmarl/nn/gumbel.hpp"

namespace sqmarl::marl {

namespace {

constexpr double kRelaxTemperature = 1.0;

void append_span(std::vector<double>& out, std::span<const double> xs) {
  out.insert(out.end(), xs.begin(), xs.end());
}

std::vector<std::vector<double>> greedy_actions(const Team& team,
                                                std::span<const double> state,
                                                bool use_target) {
  std::vector<std::vector<double>> actions;
  actions.reserve(team.agents.size());
  for (int j = 0; j < team.spec.n_agents; ++j) {
    const AgentNet& agent = team.agents[static_cast<std::size_t>(j)];
    const nn::Mlp& actor = use_target ? agent.actor_target : agent.actor;
    actions.push_back(nn::onehot_argmax(
        nn::mlp_forward(actor, obs_slice(team.spec, state, j))));
  }
  return actions;
}

}  // namespace

std::vector<double> iddpg_critic_input(
    const TeamSpec& spec, int agent, std::span<const double> state,
    const std::vector<std::vector<double>>& actions) {
  std::vector<double> input;
  input.reserve(static_cast<std::size_t>(spec.obs_dim + spec.n_actions));
  append_span(input, obs_slice(spec, state, agent));
  append_span(input, actions[static_cast<std::size_t>(agent)]);
  return input;
}

std::vector<double> maddpg_critic_input(
    const TeamSpec& spec, std::span<const double> state,
    const std::vector<std::vector<double>>& actions) {
  std::vector<double> input;
  input.reserve(static_cast<std::size_t>(spec.state_dim() +
                                         spec.n_agents * spec.n_actions));
  append_span(input, state);
  for (const std::vector<double>& a : actions) append_span(input, a);
  return input;
}

std::vector<double> coma_critic_input(
    const TeamSpec& spec, int agent, std::span<const double> state,
    const std::vector<std::vector<double>>& actions) {
  std::vector<double> input;
  input.reserve(static_cast<std::size_t>(
      spec.state_dim() + spec.n_agents * spec.n_actions + spec.n_agents));
  append_span(input, state);
  for (int j = 0; j < spec.n_agents; ++j) {
    if (j == agent) {
      input.insert(input.end(), static_cast<std::size_t>(spec.n_actions), 0.0);
    } else {
      append_span(input, actions[static_cast<std::size_t>(j)]);
    }
  }
  for (int j = 0; j < spec.n_agents; ++j) {
    input.push_back(j == agent ? 1.0 : 0.0);
  }
  return input;
}

double ddpg_critic_update(Team& team, const Batch& batch, double gamma) {
  if (batch.empty()) throw std::invalid_argument("ddpg_critic_update: empty batch");
  if (team.algo != Algo::kIddpg && team.algo != Algo::kMaddpg) {
    throw std::invalid_argument("ddpg_critic_update: wrong algorithm");
  }
  const bool centralized = team.algo == Algo::kMaddpg;
  const TeamSpec& spec = team.spec;
  const double g = static_cast<double>(batch.size());

  double total_loss = 0.0;
  for (int i = 0; i < spec.n_agents; ++i) {
    AgentNet& agent = team.agents[static_cast<std::size_t>(i)];
    nn::MlpGrads grads = nn::zero_grads(agent.critic);
    double loss = 0.0;
    for (const Transition* tr : batch) {
      double y = tr->reward;
      if (!tr->done) {
        const std::vector<std::vector<double>> next_actions =
            greedy_actions(team, tr->next_state, /*use_target=*/true);
        const std::vector<double> target_input =
            centralized
                ? maddpg_critic_input(spec, tr->next_state, next_actions)
                : iddpg_critic_input(spec, i, tr->next_state, next_actions);
        y += gamma * nn::mlp_forward(agent.critic_target, target_input)[0];
      }
      const std::vector<double> live_input =
          centralized ? maddpg_critic_input(spec, tr->state, tr->actions)
                      : iddpg_critic_input(spec, i, tr->state, tr->actions);
      nn::MlpCache cache;
      const double live = nn::mlp_forward(agent.critic, live_input, &cache)[0];
      const double residual = live - y;
      loss += 0.5 * residual * residual / g;
      nn::mlp_backward(agent.critic, cache,
                       std::vector<double>{residual / g}, grads);
    }
    nn::adam_step(agent.critic, grads, agent.critic_opt);
    total_loss += loss;
  }
  return total_loss / static_cast<double>(spec.n_agents);
}

double ddpg_actor_update(Team& team, const Batch& batch, Rng& rng) {
  if (batch.empty()) throw std::invalid_argument("ddpg_actor_update: empty batch");
  if (team.algo != Algo::kIddpg && team.algo != Algo::kMaddpg) {
    throw std::invalid_argument("ddpg_actor_update: wrong algorithm");
  }
  const bool centralized = team.algo == Algo::kMaddpg;
  const TeamSpec& spec = team.spec;
  const double g = static_cast<double>(batch.size());
  const ActorNoise noise = draw_actor_noise(batch.size(), spec, rng);

  // Snapshot semantics: gradients for every agent first, steps afterwards.
  std::vector<nn::MlpGrads> grads;
  grads.reserve(team.agents.size());
  double norm_total = 0.0;
  for (int i = 0; i < spec.n_agents; ++i) {
    const AgentNet& agent = team.agents[static_cast<std::size_t>(i)];
    nn::MlpGrads grad = nn::zero_grads(agent.actor);
    for (std::size_t k = 0; k < batch.size(); ++k) {
      const Transition& tr = *batch[k];
      std::vector<std::vector<double>> actions(
          static_cast<std::size_t>(spec.n_agents));
      nn::MlpCache actor_cache;
      for (int j = 0; j < spec.n_agents; ++j) {
        const std::vector<double> logits = nn::mlp_forward(
            team.agents[static_cast<std::size_t>(j)].actor,
            obs_slice(spec, tr.state, j), j == i ? &actor_cache : nullptr);
        actions[static_cast<std::size_t>(j)] = nn::relaxed_categorical(
            logits, noise.noise[k][static_cast<std::size_t>(j)],
            kRelaxTemperature);
      }
      const std::vector<double> input =
          centralized ? maddpg_critic_input(spec, tr.state, actions)
                      : iddpg_critic_input(spec, i, tr.state, actions);
      nn::MlpCache critic_cache;
      nn::mlp_forward(agent.critic, input, &critic_cache);
      nn::MlpGrads scratch = nn::zero_grads(agent.critic);
      const std::vector<double> d_input = nn::mlp_backward(
          agent.critic, critic_cache, std::vector<double>{1.0 / g}, scratch);
      // Own-action slot of the critic input.
      const std::size_t offset =
          centralized ? static_cast<std::size_t>(spec.state_dim() +
                                                 i * spec.n_actions)
                      : static_cast<std::size_t>(spec.obs_dim);
      std::vector<double> d_action(
          d_input.begin() + static_cast<std::ptrdiff_t>(offset),
          d_input.begin() +
              static_cast<std::ptrdiff_t>(offset) + spec.n_actions);
      const std::vector<double> d_logits = nn::gumbel_softmax_backward(
          actions[static_cast<std::size_t>(i)], kRelaxTemperature, d_action);
      nn::mlp_backward(agent.actor, actor_cache, d_logits, grad);
    }
    norm_total += nn::l2_norm(grad);
    grads.push_back(std::move(grad));
  }
  for (std::size_t i = 0; i < team.agents.size(); ++i) {
    nn::MlpGrads& grad = grads[i];
    for (std::vector<double>* block : {&grad.w1, &grad.b1, &grad.w2, &grad.b2}) {
      for (double& x : *block) x = -x;
    }
    nn::adam_step(team.agents[i].actor, grad, team.agents[i].actor_opt);
  }
  return norm_total / static_cast<double>(spec.n_agents);
}

double entropy(std::span<const double> probs) {
  double h = 0.0;
  for (double p : probs) {
    if (p > 0.0) h -= p * std::log(p);
  }
  return h;
}

namespace {

// Discounted returns through the segment, restarting at terminal steps and
// bootstrapping the tail with `tail_value` when the segment ends mid-episode.
std::vector<double> segment_returns(const Rollout& rollout, double gamma,
                                    double tail_value) {
  std::vector<double> returns(rollout.size(), 0.0);
  double running = tail_value;
  for (std::size_t t = rollout.size(); t-- > 0;) {
    running = rollout[t].reward + (rollout[t].done ? 0.0 : gamma * running);
    returns[t] = running;
  }
  return returns;
}

// Gradient of -log pi(u) * adv - beta * H with respect to the logits.
std::vector<double> policy_logit_gradient(const std::vector<double>& probs,
                                          const std::vector<double>& chosen,
                                          double advantage, double beta,
                                          double inv_count) {
  const double h = entropy(probs);
  std::vector<double> d(probs.size());
  for (std::size_t a = 0; a < probs.size(); ++a) {
    const double d_nll = advantage * (probs[a] - chosen[a]);
    const double d_entropy = probs[a] * (std::log(std::max(probs[a], 1e-300)) + h);
    d[a] = (d_nll + beta * d_entropy) * inv_count;
  }
  return d;
}

}  // namespace

OnPolicyLosses ia2c_update(Team& team, const Rollout& rollout, double gamma,
                           double entropy_coef) {
  if (rollout.empty()) throw std::invalid_argument("ia2c_update: empty rollout");
  if (team.algo != Algo::kIa2c) {
    throw std::invalid_argument("ia2c_update: wrong algorithm");
  }
  const TeamSpec& spec = team.spec;
  const double t_count = static_cast<double>(rollout.size());

  OnPolicyLosses losses;
  for (int i = 0; i < spec.n_agents; ++i) {
    AgentNet& agent = team.agents[static_cast<std::size_t>(i)];
    // Bootstrap the unfinished tail with the own value estimate.
    const Transition& last = rollout.back();
    const double tail =
        last.done ? 0.0
                  : nn::mlp_forward(agent.critic,
                                    obs_slice(spec, last.next_state, i))[0];
    const std::vector<double> returns = segment_returns(rollout, gamma, tail);

    nn::MlpGrads value_grads = nn::zero_grads(agent.critic);
    nn::MlpGrads policy_grads = nn::zero_grads(agent.actor);
    for (std::size_t t = 0; t < rollout.size(); ++t) {
      const Transition& tr = rollout[t];
      const std::span<const double> obs = obs_slice(spec, tr.state, i);

      nn::MlpCache value_cache;
      const double value = nn::mlp_forward(agent.critic, obs, &value_cache)[0];
      losses.value += 0.5 * (value - returns[t]) * (value - returns[t]) /
                      (t_count * spec.n_agents);
      nn::mlp_backward(agent.critic, value_cache,
                       std::vector<double>{(value - returns[t]) / t_count},
                       value_grads);

      nn::MlpCache actor_cache;
      const std::vector<double> probs =
          nn::softmax(nn::mlp_forward(agent.actor, obs, &actor_cache));
      const double advantage = returns[t] - value;
      const std::vector<double>& chosen = tr.actions[static_cast<std::size_t>(i)];
      losses.policy += -std::log(std::max(
                           probs[nn::argmax(chosen)], 1e-300)) *
                       advantage / (t_count * spec.n_agents);
      nn::mlp_backward(agent.actor, actor_cache,
                       policy_logit_gradient(probs, chosen, advantage,
                                             entropy_coef, 1.0 / t_count),
                       policy_grads);
    }
    nn::adam_step(agent.critic, value_grads, agent.critic_opt);
    nn::adam_step(agent.actor, policy_grads, agent.actor_opt);
  }
  return losses;
}

OnPolicyLosses coma_update(Team& team, const Rollout& rollout, double gamma,
                           double entropy_coef) {
  if (rollout.empty()) throw std::invalid_argument("coma_update: empty rollout");
  if (team.algo != Algo::kComa) {
    throw std::invalid_argument("coma_update: wrong algorithm");
  }
  const TeamSpec& spec = team.spec;
  const double t_count = static_cast<double>(rollout.size());

  OnPolicyLosses losses;
  for (int i = 0; i < spec.n_agents; ++i) {
    AgentNet& agent = team.agents[static_cast<std::size_t>(i)];

    // Tail bootstrap: expected target-critic Q over the own policy, with the
    // other agents following their greedy current policies.
    const Transition& last = rollout.back();
    double tail = 0.0;
    if (!last.done) {
      const std::vector<std::vector<double>> next_actions =
          greedy_actions(team, last.next_state, /*use_target=*/false);
      const std::vector<double> q_next = nn::mlp_forward(
          agent.critic_target,
          coma_critic_input(spec, i, last.next_state, next_actions));
      const std::vector<double> pi_next = nn::softmax(nn::mlp_forward(
          agent.actor, obs_slice(spec, last.next_state, i)));
      for (std::size_t a = 0; a < q_next.size(); ++a) tail += pi_next[a] * q_next[a];
    }
    const std::vector<double> returns = segment_returns(rollout, gamma, tail);

    nn::MlpGrads critic_grads = nn::zero_grads(agent.critic);
    nn::MlpGrads policy_grads = nn::zero_grads(agent.actor);
    for (std::size_t t = 0; t < rollout.size(); ++t) {
      const Transition& tr = rollout[t];
      const std::vector<double>& chosen = tr.actions[static_cast<std::size_t>(i)];
      const std::size_t chosen_idx = nn::argmax(chosen);

      nn::MlpCache critic_cache;
      const std::vector<double> q = nn::mlp_forward(
          agent.critic, coma_critic_input(spec, i, tr.state, tr.actions),
          &critic_cache);
      const double td_error = q[chosen_idx] - returns[t];
      losses.value += 0.5 * td_error * td_error / (t_count * spec.n_agents);
      std::vector<double> upstream(q.size(), 0.0);
      upstream[chosen_idx] = td_error / t_count;
      nn::mlp_backward(agent.critic, critic_cache, upstream, critic_grads);

      nn::MlpCache actor_cache;
      const std::vector<double> probs = nn::softmax(nn::mlp_forward(
          agent.actor, obs_slice(spec, tr.state, i), &actor_cache));
      double baseline = 0.0;
      for (std::size_t a = 0; a < q.size(); ++a) baseline += probs[a] * q[a];
      const double advantage = q[chosen_idx] - baseline;
      losses.policy += -std::log(std::max(probs[chosen_idx], 1e-300)) *
                       advantage / (t_count * spec.n_agents);
      nn::mlp_backward(agent.actor, actor_cache,
                       policy_logit_gradient(probs, chosen, advantage,
                                             entropy_coef, 1.0 / t_count),
                       policy_grads);
    }
    nn::adam_step(agent.critic, critic_grads, agent.critic_opt);
    nn::adam_step(agent.actor, policy_grads, agent.actor_opt);
  }
  return losses;
}

}  // namespace sqmarl::marl
