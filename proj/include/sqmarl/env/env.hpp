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

#ifndef SQMARL_ENV_ENV_HPP
#define SQMARL_ENV_ENV_HPP

#include <array>
#include <memory>
#include <span>
#include <string>
#include <vector>

#include "sqmarl/rng.hpp"

namespace sqmarl::env {

struct StepInfo {
  int collisions = 0;          // collisions caused by this step
  int episode_collisions = 0;  // accumulated since reset
  bool captured = false;       // prey caught (prey environment only)
  bool success = false;        // zero collisions so far (traffic only)
};

/// One environment transition as seen by the agents: per-agent observations,
/// their concatenation as the global state, and a single global reward.
struct EnvStep {
  std::vector<std::vector<double>> observations;
  std::vector<double> global_state;
  double reward = 0.0;
  bool done = false;
  StepInfo info;
};

struct EnvSpec {
  int n_agents = 0;
  int obs_dim = 0;
  int n_actions = 0;
  int episode_limit = 0;
};

/// A benchmark task. Instances are single-owner and stepped sequentially;
/// all randomness flows through the caller-supplied generator, so identical
/// seeds and action sequences reproduce trajectories bit-exactly.
class Env {
 public:
  virtual ~Env() = default;
  virtual EnvStep reset(Rng& rng) = 0;
  virtual EnvStep step(std::span<const int> actions, Rng& rng) = 0;
  virtual const EnvSpec& spec() const = 0;
  virtual std::string name() const = 0;
  // Positions of every tracked entity, controllable agents first. Particle
  // worlds report world coordinates; the gridworld reports cell centers.
  virtual std::vector<std::array<double, 2>> entity_positions() const = 0;
};

// Static task dimensions used to size networks, buffers and episode loops.
// `difficulty` applies to the traffic task only.
EnvSpec env_spec(const std::string& name, const std::string& difficulty = "");

std::unique_ptr<Env> make_env(const std::string& name,
                              const std::string& difficulty = "");

}  // namespace sqmarl::env

#endif  // SQMARL_ENV_ENV_HPP
