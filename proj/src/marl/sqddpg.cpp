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

#include "sqmarl/marl/sqddpg.hpp"

#include <stdexcept>

#include "sqmarl/nn/gumbel.hpp"

namespace sqmarl::marl {

namespace {

constexpr double kRelaxTemperature = 1.0;

void check_batch(const Batch& batch) {
  if (batch.empty()) throw std::invalid_argument("sqddpg: empty batch");
}

void check_team(const Team& team) {
  if (team.algo != Algo::kSqddpg) {
    throw std::invalid_argument("sqddpg update applied to a non-sqddpg team");
  }
}

// Greedy target-policy actions at the successor state.
std::vector<std::vector<double>> target_actions(const Team& team,
                                                std::span<const double> next_state) {
  std::vector<std::vector<double>> actions;
  actions.reserve(team.agents.size());
  for (int j = 0; j < team.spec.n_agents; ++j) {
    const std::vector<double> logits =
        nn::mlp_forward(team.agents[static_cast<std::size_t>(j)].actor_target,
                        obs_slice(team.spec, next_state, j));
    actions.push_back(nn::onehot_argmax(logits));
  }
  return actions;
}

}  // namespace

CoalitionDraws draw_coalitions(std::size_t batch, int n_agents, int samples,
                               Rng& rng) {
  if (samples < 1) {
    throw std::invalid_argument("draw_coalitions: sample count must be >= 1");
  }
  CoalitionDraws draws;
  draws.orders.resize(batch);
  for (std::size_t k = 0; k < batch; ++k) {
    draws.orders[k].resize(static_cast<std::size_t>(n_agents));
    for (int i = 0; i < n_agents; ++i) {
      draws.orders[k][static_cast<std::size_t>(i)].reserve(
          static_cast<std::size_t>(samples));
      for (int m = 0; m < samples; ++m) {
        draws.orders[k][static_cast<std::size_t>(i)].push_back(
            coopgame::sample_ordered_coalition(rng, i, n_agents));
      }
    }
  }
  return draws;
}

ActorNoise draw_actor_noise(std::size_t batch, const TeamSpec& spec, Rng& rng) {
  ActorNoise out;
  out.noise.resize(batch);
  for (std::size_t k = 0; k < batch; ++k) {
    out.noise[k].resize(static_cast<std::size_t>(spec.n_agents));
    for (int j = 0; j < spec.n_agents; ++j) {
      out.noise[k][static_cast<std::size_t>(j)] = nn::sample_gumbel_noise(
          static_cast<std::size_t>(spec.n_actions), rng);
    }
  }
  return out;
}

namespace {

struct ActorEval {
  double objective = 0.0;
  nn::MlpGrads grads;
};

ActorEval actor_eval(const Team& team, int agent, const Batch& batch,
                     const CoalitionDraws& draws, const ActorNoise& noise,
                     bool want_grads) {
  check_team(team);
  check_batch(batch);
  const TeamSpec& spec = team.spec;
  const std::size_t state_dim = static_cast<std::size_t>(spec.state_dim());
  const std::size_t n_actions = static_cast<std::size_t>(spec.n_actions);
  const AgentNet& owner = team.agents[static_cast<std::size_t>(agent)];
  if (draws.orders.size() != batch.size()) {
    throw std::invalid_argument("sqddpg: draws do not cover the batch");
  }
  const double g = static_cast<double>(batch.size());

  ActorEval eval;
  if (want_grads) eval.grads = nn::zero_grads(owner.actor);

  for (std::size_t k = 0; k < batch.size(); ++k) {
    const Transition& tr = *batch[k];
    const std::vector<coopgame::OrderedCoalition>& orders =
        draws.orders[k][static_cast<std::size_t>(agent)];
    const double m_count = static_cast<double>(orders.size());
    // Every agent's action comes from its current policy through the
    // relaxed sampler; only the owner's retains a gradient path.
    std::vector<std::vector<double>> actions(
        static_cast<std::size_t>(spec.n_agents));
    nn::MlpCache actor_cache;
    for (int j = 0; j < spec.n_agents; ++j) {
      const bool is_owner = j == agent;
      const std::vector<double> logits = nn::mlp_forward(
          team.agents[static_cast<std::size_t>(j)].actor,
          obs_slice(spec, tr.state, j), is_owner ? &actor_cache : nullptr);
      actions[static_cast<std::size_t>(j)] = nn::relaxed_categorical(
          logits, noise.noise[k][static_cast<std::size_t>(j)], kRelaxTemperature);
    }

    std::vector<double> d_action(n_actions, 0.0);
    for (const coopgame::OrderedCoalition& order : orders) {
      const std::vector<double> input = amc_input(tr.state, order, agent, actions);
      if (!want_grads) {
        eval.objective += nn::mlp_forward(owner.critic, input)[0] / (g * m_count);
        continue;
      }
      nn::MlpCache critic_cache;
      eval.objective +=
          nn::mlp_forward(owner.critic, input, &critic_cache)[0] / (g * m_count);
      nn::MlpGrads scratch = nn::zero_grads(owner.critic);  // critic stays frozen
      const std::vector<double> d_input = nn::mlp_backward(
          owner.critic, critic_cache, std::vector<double>{1.0 / (g * m_count)},
          scratch);
      const std::size_t offset =
          joiner_slot_offset(state_dim, order.size(), n_actions);
      for (std::size_t a = 0; a < n_actions; ++a) {
        d_action[a] += d_input[offset + a];
      }
    }
    if (want_grads) {
      const std::vector<double> d_logits = nn::gumbel_softmax_backward(
          actions[static_cast<std::size_t>(agent)], kRelaxTemperature, d_action);
      nn::mlp_backward(owner.actor, actor_cache, d_logits, eval.grads);
    }
  }
  return eval;
}

struct CriticEval {
  double loss = 0.0;
  std::vector<nn::MlpGrads> grads;
};

CriticEval critic_eval(const Team& team, const Batch& batch,
                       const CoalitionDraws& draws, double gamma,
                       bool want_grads) {
  check_team(team);
  check_batch(batch);
  const TeamSpec& spec = team.spec;
  const std::size_t n = static_cast<std::size_t>(spec.n_agents);
  const double g = static_cast<double>(batch.size());

  if (draws.orders.size() != batch.size()) {
    throw std::invalid_argument("sqddpg: draws do not cover the batch");
  }
  CriticEval eval;
  if (want_grads) {
    eval.grads.reserve(n);
    for (const AgentNet& agent : team.agents) {
      eval.grads.push_back(nn::zero_grads(agent.critic));
    }
  }

  std::vector<std::vector<nn::MlpCache>> caches(n);
  for (std::size_t k = 0; k < batch.size(); ++k) {
    const Transition& tr = *batch[k];

    double target_sum = 0.0;
    if (!tr.done) {
      const std::vector<std::vector<double>> next_actions =
          target_actions(team, tr.next_state);
      for (std::size_t i = 0; i < n; ++i) {
        const std::vector<coopgame::OrderedCoalition>& orders = draws.orders[k][i];
        double q = 0.0;
        for (const coopgame::OrderedCoalition& order : orders) {
          q += nn::mlp_forward(
              team.agents[i].critic_target,
              amc_input(tr.next_state, order, static_cast<int>(i), next_actions))[0];
        }
        target_sum += q / static_cast<double>(orders.size());
      }
    }
    const double y = tr.reward + (tr.done ? 0.0 : gamma * target_sum);

    double live_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const std::vector<coopgame::OrderedCoalition>& orders = draws.orders[k][i];
      if (want_grads) caches[i].assign(orders.size(), nn::MlpCache{});
      double q = 0.0;
      for (std::size_t m = 0; m < orders.size(); ++m) {
        const std::vector<double> input =
            amc_input(tr.state, orders[m], static_cast<int>(i), tr.actions);
        q += nn::mlp_forward(team.agents[i].critic, input,
                             want_grads ? &caches[i][m] : nullptr)[0];
      }
      live_sum += q / static_cast<double>(orders.size());
    }

    const double residual = y - live_sum;
    eval.loss += 0.5 * residual * residual / g;
    if (want_grads) {
      for (std::size_t i = 0; i < n; ++i) {
        const double m_count = static_cast<double>(draws.orders[k][i].size());
        const std::vector<double> upstream = {-residual / (g * m_count)};
        for (const nn::MlpCache& cache : caches[i]) {
          nn::mlp_backward(team.agents[i].critic, cache, upstream, eval.grads[i]);
        }
      }
    }
  }
  return eval;
}

}  // namespace

double sqddpg_actor_objective(const Team& team, int agent, const Batch& batch,
                              const CoalitionDraws& draws,
                              const ActorNoise& noise) {
  return actor_eval(team, agent, batch, draws, noise, false).objective;
}

nn::MlpGrads sqddpg_actor_gradient(const Team& team, int agent,
                                   const Batch& batch,
                                   const CoalitionDraws& draws,
                                   const ActorNoise& noise) {
  return actor_eval(team, agent, batch, draws, noise, true).grads;
}

double sqddpg_critic_loss(const Team& team, const Batch& batch,
                          const CoalitionDraws& draws, double gamma) {
  return critic_eval(team, batch, draws, gamma, false).loss;
}

std::vector<nn::MlpGrads> sqddpg_critic_gradients(const Team& team,
                                                  const Batch& batch,
                                                  const CoalitionDraws& draws,
                                                  double gamma) {
  return critic_eval(team, batch, draws, gamma, true).grads;
}

double sqddpg_actor_update(Team& team, const Batch& batch, int samples,
                           Rng& rng) {
  const CoalitionDraws draws =
      draw_coalitions(batch.size(), team.spec.n_agents, samples, rng);
  const ActorNoise noise = draw_actor_noise(batch.size(), team.spec, rng);
  // All gradients come from the same parameter snapshot before any step.
  std::vector<nn::MlpGrads> grads;
  grads.reserve(team.agents.size());
  double norm_total = 0.0;
  for (int i = 0; i < team.spec.n_agents; ++i) {
    grads.push_back(sqddpg_actor_gradient(team, i, batch, draws, noise));
    norm_total += nn::l2_norm(grads.back());
  }
  for (std::size_t i = 0; i < team.agents.size(); ++i) {
    // Ascend: Adam minimizes, so feed the negated gradient.
    nn::MlpGrads& g = grads[i];
    for (std::vector<double>* block : {&g.w1, &g.b1, &g.w2, &g.b2}) {
      for (double& x : *block) x = -x;
    }
    nn::adam_step(team.agents[i].actor, g, team.agents[i].actor_opt);
  }
  return norm_total / static_cast<double>(team.agents.size());
}

double sqddpg_critic_update(Team& team, const Batch& batch, int samples,
                            double gamma, Rng& rng) {
  const CoalitionDraws draws =
      draw_coalitions(batch.size(), team.spec.n_agents, samples, rng);
  CriticEval eval = critic_eval(team, batch, draws, gamma, true);
  for (std::size_t i = 0; i < team.agents.size(); ++i) {
    nn::adam_step(team.agents[i].critic, eval.grads[i], team.agents[i].critic_opt);
  }
  return eval.loss;
}

double sqddpg_sampled_q(const Team& team, int agent,
                        std::span<const double> state,
                        const std::vector<std::vector<double>>& actions,
                        int samples, Rng& rng) {
  const AgentNet& owner = team.agents[static_cast<std::size_t>(agent)];
  return shapley_q_estimate(
      agent, team.spec.n_agents, samples,
      [&](const coopgame::OrderedCoalition& order, int joiner) {
        return nn::mlp_forward(owner.critic,
                               amc_input(state, order, joiner, actions))[0];
      },
      rng);
}

double sqddpg_exact_q(const Team& team, int agent,
                      std::span<const double> state,
                      const std::vector<std::vector<double>>& actions,
                      bool use_target) {
  const AgentNet& owner = team.agents[static_cast<std::size_t>(agent)];
  const nn::Mlp& critic = use_target ? owner.critic_target : owner.critic;
  double expectation = 0.0;
  for (const auto& [order, probability] :
       enumerate_join_orders(agent, team.spec.n_agents)) {
    expectation +=
        probability *
        nn::mlp_forward(critic, amc_input(state, order, agent, actions))[0];
  }
  return expectation;
}

}  // namespace sqmarl::marl
