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

#include "sqmarl/env/env.hpp"

#include <stdexcept>

#include "sqmarl/env/particle.hpp"
#include "sqmarl/env/traffic.hpp"

namespace sqmarl::env {

EnvSpec env_spec(const std::string& name, const std::string& difficulty) {
  if (name == "coopnav") return CoopNavEnv().spec();
  if (name == "prey") return PreyPredatorEnv().spec();
  if (name == "traffic") {
    return TrafficEnv(traffic_params(difficulty.empty() ? "easy" : difficulty))
        .spec();
  }
  throw std::invalid_argument("env_spec: unknown environment '" + name + "'");
}

std::unique_ptr<Env> make_env(const std::string& name,
                              const std::string& difficulty) {
  if (name == "coopnav") return std::make_unique<CoopNavEnv>();
  if (name == "prey") return std::make_unique<PreyPredatorEnv>();
  if (name == "traffic") {
    return std::make_unique<TrafficEnv>(
        traffic_params(difficulty.empty() ? "easy" : difficulty));
  }
  throw std::invalid_argument("make_env: unknown environment '" + name + "'");
}

}  // namespace sqmarl::env
