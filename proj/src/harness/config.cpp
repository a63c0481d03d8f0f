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

#include "sqmarl/harness/config.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "sqmarl/env/env.hpp"
#include "sqmarl/marl/nets.hpp"

namespace sqmarl::harness {

TrainConfig default_config(const std::string& environment,
                           const std::string& difficulty,
                           const std::string& algorithm) {
  marl::parse_algo(algorithm);  // reject unknown algorithms early
  const bool coma = algorithm == "coma";
  const bool ia2c = algorithm == "ia2c";

  TrainConfig c;
  c.algorithm = algorithm;
  c.environment = environment;
  c.difficulty = difficulty.empty() ? "easy" : difficulty;

  if (environment == "coopnav") {
    c.hidden_units = 32;
    c.episodes = 5000;
    c.episode_length = 200;
    c.gamma = 0.9;
    c.behaviour_update_freq = 100;
    c.actor_lr = coma ? 1e-2 : (ia2c ? 1e-6 : 1e-4);
    c.critic_lr = coma ? 1e-4 : (ia2c ? 1e-5 : 1e-3);
    c.target_update_freq = 200;
    c.target_tau = 0.1;
    c.entropy_coef = 1e-2;
    c.batch_size = 32;
    return c;
  }
  if (environment == "prey") {
    c.hidden_units = 128;
    c.episodes = 5000;
    c.episode_length = 200;
    c.gamma = 0.99;
    c.behaviour_update_freq = 100;
    c.actor_lr = (coma || ia2c) ? 1e-3 : 1e-4;
    c.critic_lr = (coma || ia2c) ? 1e-4 : 5e-4;
    c.target_update_freq = 200;
    c.target_tau = 0.1;
    c.entropy_coef = 1e-3;
    c.batch_size = 128;
    return c;
  }
  if (environment == "traffic") {
    c.hidden_units = 128;
    c.gamma = 0.99;
    c.behaviour_update_freq = 25;
    c.actor_lr = 1e-4;
    c.critic_lr = 1e-3;
    c.target_update_freq = 50;
    c.target_tau = 0.1;
    c.entropy_coef = 1e-4;
    if (c.difficulty == "easy") {
      c.episodes = 2000;
      c.episode_length = 50;
      c.batch_size = 64;
    } else if (c.difficulty == "medium") {
      c.episodes = 5000;
      c.episode_length = 50;
      c.batch_size = 32;
    } else if (c.difficulty == "hard") {
      c.episodes = 2000;
      c.episode_length = 100;
      c.batch_size = 32;
    } else {
      throw std::invalid_argument("default_config: unknown difficulty '" +
                                  c.difficulty + "'");
    }
    return c;
  }
  throw std::invalid_argument("default_config: unknown environment '" +
                              environment + "'");
}

namespace {

long to_long(const std::string& value, const std::string& key) {
  std::size_t used = 0;
  const long parsed = std::stol(value, &used);
  if (used != value.size()) {
    throw std::invalid_argument("config: bad integer for " + key + ": " + value);
  }
  return parsed;
}

double to_double(const std::string& value, const std::string& key) {
  std::size_t used = 0;
  const double parsed = std::stod(value, &used);
  if (used != value.size()) {
    throw std::invalid_argument("config: bad number for " + key + ": " + value);
  }
  return parsed;
}

}  // namespace

TrainConfig apply_config_line(const std::string& key, const std::string& value,
                              TrainConfig base) {
  if (key == "algorithm") base.algorithm = value;
  else if (key == "environment") base.environment = value;
  else if (key == "difficulty") base.difficulty = value;
  else if (key == "sample_size") base.sample_size = static_cast<int>(to_long(value, key));
  else if (key == "hidden_units") base.hidden_units = static_cast<int>(to_long(value, key));
  else if (key == "episodes") base.episodes = to_long(value, key);
  else if (key == "episode_length") base.episode_length = static_cast<int>(to_long(value, key));
  else if (key == "gamma") base.gamma = to_double(value, key);
  else if (key == "behaviour_update_freq") base.behaviour_update_freq = to_long(value, key);
  else if (key == "target_update_freq") base.target_update_freq = to_long(value, key);
  else if (key == "actor_lr") base.actor_lr = to_double(value, key);
  else if (key == "critic_lr") base.critic_lr = to_double(value, key);
  else if (key == "target_tau") base.target_tau = to_double(value, key);
  else if (key == "entropy_coef") base.entropy_coef = to_double(value, key);
  else if (key == "batch_size") base.batch_size = static_cast<int>(to_long(value, key));
  else if (key == "replay_capacity") base.replay_capacity = to_long(value, key);
  else if (key == "seed") base.seed = static_cast<std::uint64_t>(to_long(value, key));
  else throw std::invalid_argument("config: unknown key '" + key + "'");
  return base;
}

TrainConfig apply_config_file(const std::string& path, TrainConfig base) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("config: cannot open " + path);
  std::string line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::size_t begin = line.find_first_not_of(" \t\r");
    if (begin == std::string::npos) continue;
    std::size_t end = line.find_last_not_of(" \t\r");
    line = line.substr(begin, end - begin + 1);
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error("config: expected key=value, got '" + line + "'");
    }
    base = apply_config_line(line.substr(0, eq), line.substr(eq + 1), base);
  }
  return base;
}

void validate_config(const TrainConfig& c) {
  marl::parse_algo(c.algorithm);
  env::env_spec(c.environment, c.difficulty);  // rejects unknown env/difficulty
  if (c.sample_size < 1) throw std::invalid_argument("config: sample_size must be >= 1");
  if (c.hidden_units < 1) throw std::invalid_argument("config: hidden_units must be >= 1");
  if (c.episodes < 1) throw std::invalid_argument("config: episodes must be >= 1");
  if (c.episode_length < 1) throw std::invalid_argument("config: episode_length must be >= 1");
  if (c.gamma < 0.0 || c.gamma > 1.0) throw std::invalid_argument("config: gamma outside [0, 1]");
  if (c.behaviour_update_freq < 1) throw std::invalid_argument("config: behaviour_update_freq must be >= 1");
  if (c.target_update_freq < 1) throw std::invalid_argument("config: target_update_freq must be >= 1");
  if (c.actor_lr <= 0.0) throw std::invalid_argument("config: actor_lr must be positive");
  if (c.critic_lr <= 0.0) throw std::invalid_argument("config: critic_lr must be positive");
  if (c.target_tau < 0.0 || c.target_tau > 1.0) throw std::invalid_argument("config: target_tau outside [0, 1]");
  if (c.entropy_coef < 0.0) throw std::invalid_argument("config: entropy_coef must be >= 0");
  if (c.batch_size < 1) throw std::invalid_argument("config: batch_size must be >= 1");
  if (c.replay_capacity < c.batch_size) {
    throw std::invalid_argument("config: replay_capacity below batch_size");
  }
}

std::string canonical_config(const TrainConfig& c) {
  char buffer[256];
  std::ostringstream out;
  auto put = [&](const char* key, const char* format, auto value) {
    std::snprintf(buffer, sizeof buffer, format, value);
    out << key << '=' << buffer << '\n';
  };
  out << "algorithm=" << c.algorithm << '\n';
  out << "environment=" << c.environment << '\n';
  out << "difficulty=" << c.difficulty << '\n';
  put("sample_size", "%d", c.sample_size);
  put("hidden_units", "%d", c.hidden_units);
  put("episodes", "%ld", c.episodes);
  put("episode_length", "%d", c.episode_length);
  put("gamma", "%.17g", c.gamma);
  put("behaviour_update_freq", "%ld", c.behaviour_update_freq);
  put("target_update_freq", "%ld", c.target_update_freq);
  put("actor_lr", "%.17g", c.actor_lr);
  put("critic_lr", "%.17g", c.critic_lr);
  put("target_tau", "%.17g", c.target_tau);
  put("entropy_coef", "%.17g", c.entropy_coef);
  put("batch_size", "%d", c.batch_size);
  put("replay_capacity", "%ld", c.replay_capacity);
  put("seed", "%llu", static_cast<unsigned long long>(c.seed));
  return out.str();
}

std::string config_hash(const TrainConfig& c) {
  const std::string canon = canonical_config(c);
  std::uint64_t hash = 0xcbf29ce484222325ULL;
  for (unsigned char byte : canon) {
    hash ^= byte;
    hash *= 0x100000001b3ULL;
  }
  char out[17];
  std::snprintf(out, sizeof out, "%016llx", static_cast<unsigned long long>(hash));
  return std::string(out);
}

}  // namespace sqmarl::harness
