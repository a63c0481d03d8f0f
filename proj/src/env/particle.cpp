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

#include "sqmarl/env/particle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace sqmarl::env {

namespace {

void check_actions(std::span<const int> actions, std::size_t expected) {
  if (actions.size() != expected) {
    throw std::invalid_argument("particle env: expected " +
                                std::to_string(expected) + " actions, got " +
                                std::to_string(actions.size()));
  }
  for (int a : actions) {
    if (a < 0 || a >= kParticleActions) {
      throw std::invalid_argument("particle env: action index " +
                                  std::to_string(a) + " out of range");
    }
  }
}

std::array<double, 2> action_force(int action) {
  switch (action) {
    case kMoveUp:
      return {0.0, kMoveForce};
    case kMoveDown:
      return {0.0, -kMoveForce};
    case kMoveRight:
      return {kMoveForce, 0.0};
    case kMoveLeft:
      return {-kMoveForce, 0.0};
    default:
      return {0.0, 0.0};
  }
}

void spawn(Body& body, Rng& rng) {
  body.pos[0] = rng.uniform(-kWorldHalfSpan, kWorldHalfSpan);
  body.pos[1] = rng.uniform(-kWorldHalfSpan, kWorldHalfSpan);
  body.vel = {0.0, 0.0};
}

void append(std::vector<double>& out, const std::array<double, 2>& v) {
  out.push_back(v[0]);
  out.push_back(v[1]);
}

void append_displacement(std::vector<double>& out,
                         const std::array<double, 2>& from,
                         const std::array<double, 2>& to) {
  out.push_back(to[0] - from[0]);
  out.push_back(to[1] - from[1]);
}

std::vector<double> concat(const std::vector<std::vector<double>>& parts) {
  std::vector<double> out;
  for (const std::vector<double>& p : parts) out.insert(out.end(), p.begin(), p.end());
  return out;
}

}  // namespace

void integrate_body(Body& body, int action) {
  const std::array<double, 2> force = action_force(action);
  for (int d = 0; d < 2; ++d) {
    body.vel[d] = body.vel[d] * (1.0 - kDamping) + force[d] * kDt;
  }
  const double speed = std::hypot(body.vel[0], body.vel[1]);
  if (speed > kMaxSpeed) {
    const double scale = kMaxSpeed / speed;
    body.vel[0] *= scale;
    body.vel[1] *= scale;
  }
  for (int d = 0; d < 2; ++d) body.pos[d] += body.vel[d] * kDt;
}

double distance(const std::array<double, 2>& a, const std::array<double, 2>& b) {
  return std::hypot(a[0] - b[0], a[1] - b[1]);
}

double coopnav_distance_cost(std::span<const Body> agents,
                             std::span<const std::array<double, 2>> landmarks) {
  double cost = 0.0;
  for (const std::array<double, 2>& landmark : landmarks) {
    double nearest = std::numeric_limits<double>::infinity();
    for (const Body& agent : agents) {
      nearest = std::min(nearest, distance(agent.pos, landmark));
    }
    cost += nearest;
  }
  return cost;
}

int count_agent_collisions(std::span<const Body> agents) {
  int collisions = 0;
  for (std::size_t i = 0; i < agents.size(); ++i) {
    for (std::size_t j = i + 1; j < agents.size(); ++j) {
      if (distance(agents[i].pos, agents[j].pos) < 2.0 * kAgentRadius) {
        ++collisions;
      }
    }
  }
  return collisions;
}

// ---------------------------------------------------------------------------
// Cooperative Navigation

CoopNavEnv::CoopNavEnv() {
  spec_.n_agents = 3;
  spec_.obs_dim = 14;
  spec_.n_actions = kParticleActions;
  spec_.episode_limit = 200;
}

EnvStep CoopNavEnv::reset(Rng& rng) {
  for (Body& agent : agents_) spawn(agent, rng);
  for (std::array<double, 2>& landmark : landmarks_) {
    landmark[0] = rng.uniform(-kWorldHalfSpan, kWorldHalfSpan);
    landmark[1] = rng.uniform(-kWorldHalfSpan, kWorldHalfSpan);
  }
  episode_collisions_ = 0;
  return observe(0.0, 0);
}

EnvStep CoopNavEnv::step(std::span<const int> actions, Rng&) {
  check_actions(actions, agents_.size());
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    integrate_body(agents_[i], actions[i]);
  }
  const int collisions = count_agent_collisions(agents_);
  episode_collisions_ += collisions;
  const double reward = -coopnav_distance_cost(agents_, landmarks_) - collisions;
  return observe(reward, collisions);
}

EnvStep CoopNavEnv::observe(double reward, int collisions) const {
  EnvStep result;
  result.observations.reserve(agents_.size());
  for (std::size_t i = 0; i < agents_.size(); ++i) {
    std::vector<double> obs;
    obs.reserve(static_cast<std::size_t>(spec_.obs_dim));
    append(obs, agents_[i].pos);
    append(obs, agents_[i].vel);
    for (const std::array<double, 2>& landmark : landmarks_) {
      append_displacement(obs, agents_[i].pos, landmark);
    }
    for (std::size_t j = 0; j < agents_.size(); ++j) {
      if (j == i) continue;
      append_displacement(obs, agents_[i].pos, agents_[j].pos);
    }
    result.observations.push_back(std::move(obs));
  }
  result.global_state = concat(result.observations);
  result.reward = reward;
  result.done = false;
  result.info.collisions = collisions;
  result.info.episode_collisions = episode_collisions_;
  return result;
}

std::vector<std::array<double, 2>> CoopNavEnv::entity_positions() const {
  std::vector<std::array<double, 2>> out;
  for (const Body& agent : agents_) out.push_back(agent.pos);
  for (const std::array<double, 2>& landmark : landmarks_) out.push_back(landmark);
  return out;
}

void CoopNavEnv::place_for_test(std::span<const Body> agents,
                                std::span<const std::array<double, 2>> landmarks) {
  if (agents.size() != agents_.size() || landmarks.size() != landmarks_.size()) {
    throw std::invalid_argument("place_for_test: wrong entity counts");
  }
  for (std::size_t i = 0; i < agents_.size(); ++i) agents_[i] = agents[i];
  for (std::size_t i = 0; i < landmarks_.size(); ++i) landmarks_[i] = landmarks[i];
}

// ---------------------------------------------------------------------------
// Prey-and-Predator

PreyPredatorEnv::PreyPredatorEnv() {
  spec_.n_agents = 3;
  spec_.obs_dim = 12;
  spec_.n_actions = kParticleActions;
  spec_.episode_limit = 200;
}

EnvStep PreyPredatorEnv::reset(Rng& rng) {
  for (Body& predator : predators_) spawn(predator, rng);
  spawn(prey_, rng);
  captured_ = false;
  return observe(0.0, false);
}

EnvStep PreyPredatorEnv::step(std::span<const int> actions, Rng& rng) {
  check_actions(actions, predators_.size());
  // The prey is a random agent over the same action set.
  const int prey_action = rng.uniform_int(kParticleActions);
  for (std::size_t i = 0; i < predators_.size(); ++i) {
    integrate_body(predators_[i], actions[i]);
  }
  integrate_body(prey_, prey_action);

  double nearest = std::numeric_limits<double>::infinity();
  for (const Body& predator : predators_) {
    nearest = std::min(nearest, distance(predator.pos, prey_.pos));
  }
  const bool captured = nearest < 2.0 * kAgentRadius;
  captured_ = captured;
  const double reward = -nearest + (captured ? 10.0 : 0.0);
  return observe(reward, captured);
}

EnvStep PreyPredatorEnv::observe(double reward, bool captured) const {
  EnvStep result;
  result.observations.reserve(predators_.size());
  for (std::size_t i = 0; i < predators_.size(); ++i) {
    std::vector<double> obs;
    obs.reserve(static_cast<std::size_t>(spec_.obs_dim));
    append(obs, predators_[i].pos);
    append(obs, predators_[i].vel);
    append_displacement(obs, predators_[i].pos, prey_.pos);
    for (std::size_t j = 0; j < predators_.size(); ++j) {
      if (j == i) continue;
      append_displacement(obs, predators_[i].pos, predators_[j].pos);
    }
    append(obs, prey_.vel);
    result.observations.push_back(std::move(obs));
  }
  result.global_state = concat(result.observations);
  result.reward = reward;
  result.done = captured;
  result.info.captured = captured;
  return result;
}

std::vector<std::array<double, 2>> PreyPredatorEnv::entity_positions() const {
  std::vector<std::array<double, 2>> out;
  for (const Body& predator : predators_) out.push_back(predator.pos);
  out.push_back(prey_.pos);
  return out;
}

void PreyPredatorEnv::place_for_test(std::span<const Body> predators,
                                     const Body& prey) {
  if (predators.size() != predators_.size()) {
    throw std::invalid_argument("place_for_test: wrong predator count");
  }
  for (std::size_t i = 0; i < predators_.size(); ++i) predators_[i] = predators[i];
  prey_ = prey;
}

}  // namespace sqmarl::env
