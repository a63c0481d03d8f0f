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

#ifndef SQMARL_HARNESS_BUNDLE_HPP
#define SQMARL_HARNESS_BUNDLE_HPP

#include <string>

#include "sqmarl/harness/config.hpp"
#include "sqmarl/marl/nets.hpp"

namespace sqmarl::harness {

/// Checkpoint bundle: a directory holding manifest.json plus one parameter
/// blob per network (actor_<i>.nn, critic_<i>.nn). The manifest pins the
/// algorithm, environment, dimensions, config hash and episode count; the
/// loader rebuilds the team and validates every shape against it.
struct BundleMeta {
  std::string algorithm;
  std::string environment;
  std::string difficulty;
  std::string config_hash;
  long episodes_trained = 0;
  int n_agents = 0;
  int obs_dim = 0;
  int n_actions = 0;
  int hidden_units = 0;
  int sample_size = 1;
};

void save_bundle(const std::string& dir, const marl::Team& team,
                 const BundleMeta& meta);

struct LoadedBundle {
  marl::Team team;
  BundleMeta meta;
};

LoadedBundle load_bundle(const std::string& dir);

}  // namespace sqmarl::harness

#endif  // SQMARL_HARNESS_BUNDLE_HPP
