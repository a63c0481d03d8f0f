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

#ifndef SQMARL_ENV_PARTICLE_HPP
#define SQMARL_ENV_PARTICLE_HPP

#include <array>

#include "sqmarl/env/env.hpp"

namespace sqmarl::env {

// Shared 2-D point-mass constants for both particle tasks. Spawn positions
// are uniform on the +/-1 square; discrete moves apply a fixed axis force.
inline constexpr double kDt = 0.1;
inline constexpr double kDamping = 0.25;
inline constexpr double kAgentRadius = 0.1;
inline constexpr double kMoveForce = 1.0;
inline constexpr double kMaxSpeed = 1.0;
inline constexpr double kWorldHalfSpan = 1.0;

// Discrete action indices shared by both particle tasks.
enum ParticleAction {
  kMoveUp = 0,
  kMoveDown = 1,
  kMoveRight = 2,
  kMoveLeft = 3,
  kStay = 4,
};
inline constexpr int kParticleActions = 5;

struct Body {
  std::array<double, 2> pos{0.0, 0.0};
  std::array<double, 2> vel{0.0, 0.0};
};

// One integration step: damped velocity plus the action force, speed capped.
void integrate_body(Body& body, int action);

double distance(const std::array<double, 2>& a, const std::array<double, 2>& b);

// Global reward pieces, exposed for direct testing against hand-computed
// layouts. Collisions are counted once per overlapping pair.
double coopnav_distance_cost(std::span<const Body> agents,
                             std::span<const std::array<double, 2>> landmarks);
int count_agent_collisions(std::span<const Body> agents);

/// Three agents cover three landmarks; reward is the negative sum over
/// landmarks of the distance to the nearest agent, minus one per collision.
class CoopNavEnv : public Env {
 public:
  CoopNavEnv();
  EnvStep reset(Rng& rng) override;
  EnvStep step(std::span<const int> actions, Rng& rng) override;
  const EnvSpec& spec() const override { return spec_; }
  std::string name() const override { return "coopnav"; }
  std::vector<std::array<double, 2>> entity_positions() const override;

  // Test access: place entities directly, then call step with stay actions
  // or evaluate the reward helpers.
  void place_for_test(std::span<const Body> agents,
                      std::span<const std::array<double, 2>> landmarks);

 private:
  EnvStep observe(double reward, int collisions) const;

  EnvSpec spec_;
  std::array<Body, 3> agents_;
  std::array<std::array<double, 2>, 3> landmarks_;
  int episode_collisions_ = 0;
};

/// Three predators chase a uniformly random prey; reward is the negative
/// minimal predator-prey distance, plus ten on capture (which terminates).
class PreyPredatorEnv : public Env {
 public:
  PreyPredatorEnv();
  EnvStep reset(Rng& rng) override;
  EnvStep step(std::span<const int> actions, Rng& rng) override;
  const EnvSpec& spec() const override { return spec_; }
  std::string name() const override { return "prey"; }
  std::vector<std::array<double, 2>> entity_positions() const override;

  void place_for_test(std::span<const Body> predators, const Body& prey);

 private:
  EnvStep observe(double reward, bool captured) const;

  EnvSpec spec_;
  std::array<Body, 3> predators_;
  Body prey_;
  bool captured_ = false;
};

}  // namespace sqmarl::env

#endif  // SQMARL_ENV_PARTICLE_HPP
