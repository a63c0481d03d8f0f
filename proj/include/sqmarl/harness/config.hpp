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

#ifndef SQMARL_HARNESS_CONFIG_HPP
#define SQMARL_HARNESS_CONFIG_HPP

#include <cstdint>
#include <string>

namespace sqmarl::harness {

/// Everything one training run needs. Defaults come from the per-environment
/// tables and may be overridden by a flat key=value file or CLI flags.
struct TrainConfig {
  std::string algorithm = "sqddpg";
  std::string environment = "coopnav";
  std::string difficulty = "easy";  // traffic only
  int sample_size = 1;              // join orders per Shapley Q estimate
  int hidden_units = 32;
  long episodes = 5000;
  int episode_length = 200;
  double gamma = 0.9;
  long behaviour_update_freq = 100;  // env steps between behaviour updates
  long target_update_freq = 200;     // env steps between target blends
  double actor_lr = 1e-4;
  double critic_lr = 1e-3;
  double target_tau = 0.1;
  double entropy_coef = 1e-2;
  int batch_size = 32;
  long replay_capacity = 10000;
  std::uint64_t seed = 0;
};

// Embedded per-environment defaults, including the divergent policy/critic
// learning rates for the natural-gradient-style baselines.
TrainConfig default_config(const std::string& environment,
                           const std::string& difficulty,
                           const std::string& algorithm);

// Applies "key=value" lines over `base`; '#' starts a comment. Unknown keys
// and malformed values are errors.
TrainConfig apply_config_file(const std::string& path, TrainConfig base);
TrainConfig apply_config_line(const std::string& key, const std::string& value,
                              TrainConfig base);

void validate_config(const TrainConfig& config);

// Canonical "key=value\n" listing in fixed order; basis of the config hash.
std::string canonical_config(const TrainConfig& config);

// FNV-1a 64-bit hash of the canonical listing, in hex.
std::string config_hash(const TrainConfig& config);

}  // namespace sqmarl::harness

#endif  // SQMARL_HARNESS_CONFIG_HPP
