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

#include "sqmarl/coopgame/game.hpp"

#include <cmath>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace sqmarl::coopgame {

namespace {

// Value tables are dense over all 2^n coalitions; keep them small enough to
// sit comfortably in memory even for sampling-only uses.
constexpr int kMaxTableAgents = 20;

void check_agent_count(int n) {
  if (n < 1 || n > kMaxTableAgents) {
    throw std::invalid_argument("CharacteristicGame: agent count " +
                                std::to_string(n) + " outside [1, " +
                                std::to_string(kMaxTableAgents) + "]");
  }
}

}  // namespace

CharacteristicGame::CharacteristicGame(int n, std::vector<double> values)
    : n_(n), values_(std::move(values)) {
  check_agent_count(n);
  const std::size_t expected = std::size_t{1} << n;
  if (values_.size() != expected) {
    throw std::invalid_argument(
        "CharacteristicGame: expected " + std::to_string(expected) +
        " coalition values, got " + std::to_string(values_.size()));
  }
  if (values_[0] != 0.0) {
    throw std::invalid_argument(
        "CharacteristicGame: the empty coalition must have value 0");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument(
          "CharacteristicGame: all coalition values must be finite");
    }
  }
}

CharacteristicGame CharacteristicGame::from_function(
    int n, const std::function<double(Mask)>& v) {
  check_agent_count(n);
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> values(size);
  values[0] = 0.0;
  for (std::size_t c = 1; c < size; ++c) {
    values[c] = v(static_cast<Mask>(c));
  }
  return CharacteristicGame(n, std::move(values));
}

double CharacteristicGame::value(Mask coalition) const {
  if (coalition >= values_.size()) {
    throw std::invalid_argument("CharacteristicGame::value: coalition mask " +
                                std::to_string(coalition) +
                                " out of range for " + std::to_string(n_) +
                                " agents");
  }
  return values_[coalition];
}

double marginal_contribution(const CharacteristicGame& game, Mask coalition,
                             int agent) {
  if (agent < 0 || agent >= game.num_agents()) {
    throw std::invalid_argument("marginal_contribution: agent " +
                                std::to_string(agent) + " out of range");
  }
  const Mask bit = static_cast<Mask>(1u) << agent;
  if ((coalition & bit) != 0) {
    throw std::invalid_argument(
        "marginal_contribution: agent " + std::to_string(agent) +
        " already belongs to the coalition");
  }
  return game.value(coalition | bit) - game.value(coalition);
}

CharacteristicGame read_game(std::istream& in) {
  int n = 0;
  if (!(in >> n)) {
    throw std::runtime_error("read_game: missing agent count");
  }
  check_agent_count(n);
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> values(size, 0.0);
  std::vector<bool> seen(size, false);
  seen[0] = true;  // empty coalition defaults to 0 and may be omitted
  Mask mask = 0;
  double value = 0.0;
  while (in >> mask >> value) {
    if (mask >= size) {
      throw std::runtime_error("read_game: coalition mask " +
                               std::to_string(mask) + " out of range");
    }
    values[mask] = value;
    seen[mask] = true;
  }
  for (std::size_t c = 0; c < size; ++c) {
    if (!seen[c]) {
      throw std::runtime_error("read_game: no value for coalition mask " +
                               std::to_string(c));
    }
  }
  return CharacteristicGame(n, std::move(values));
}

void write_game(std::ostream& out, const CharacteristicGame& game) {
  out << game.num_agents() << '\n';
  std::ostringstream line;
  line.precision(17);
  for (std::size_t c = 0; c < game.num_coalitions(); ++c) {
    line.str("");
    line << c << ' ' << game.value(static_cast<Mask>(c)) << '\n';
    out << line.str();
  }
}

CharacteristicGame random_game(int n, Rng& rng) {
  check_agent_count(n);
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> values(size);
  values[0] = 0.0;
  for (std::size_t c = 1; c < size; ++c) values[c] = rng.uniform();
  return CharacteristicGame(n, std::move(values));
}

CharacteristicGame random_convex_game(int n, Rng& rng) {
  check_agent_count(n);
  const std::size_t size = std::size_t{1} << n;
  std::vector<double> moebius(size);
  moebius[0] = 0.0;
  for (std::size_t t = 1; t < size; ++t) moebius[t] = rng.uniform();
  // Zeta transform: v(C) = sum of m(T) over T subset of C.
  std::vector<double> values = moebius;
  for (int bit = 0; bit < n; ++bit) {
    const std::size_t b = std::size_t{1} << bit;
    for (std::size_t c = 0; c < size; ++c) {
      if (c & b) values[c] += values[c ^ b];
    }
  }
  return CharacteristicGame(n, std::move(values));
}

CharacteristicGame symmetrized(const CharacteristicGame& game, int i, int j) {
  const int n = game.num_agents();
  if (i < 0 || j < 0 || i >= n || j >= n || i == j) {
    throw std::invalid_argument("symmetrized: invalid agent pair");
  }
  const Mask bi = static_cast<Mask>(1u) << i;
  const Mask bj = static_cast<Mask>(1u) << j;
  return CharacteristicGame::from_function(n, [&](Mask c) {
    Mask swapped = c;
    const bool has_i = (c & bi) != 0;
    const bool has_j = (c & bj) != 0;
    if (has_i != has_j) swapped ^= bi | bj;
    return 0.5 * (game.value(c) + game.value(swapped));
  });
}

CharacteristicGame with_dummy(const CharacteristicGame& game, int agent) {
  const int n = game.num_agents();
  if (agent < 0 || agent >= n) {
    throw std::invalid_argument("with_dummy: agent out of range");
  }
  const Mask bit = static_cast<Mask>(1u) << agent;
  return CharacteristicGame::from_function(
      n, [&](Mask c) { return game.value(c & ~bit); });
}

}  // namespace sqmarl::coopgame
