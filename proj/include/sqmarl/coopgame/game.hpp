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

#ifndef SQMARL_COOPGAME_GAME_HPP
#define SQMARL_COOPGAME_GAME_HPP

#include <cstdint>
#include <functional>
#include <iosfwd>
#include <vector>

#include "sqmarl/rng.hpp"

namespace sqmarl::coopgame {

// A coalition over at most 20 agents, bit i set <=> agent i is a member.
using Mask = std::uint32_t;

// Exact (2^n-enumeration) operations are capped here; the factorial weights
// stay exactly representable in double precision up to this agent count.
inline constexpr int kMaxExactAgents = 12;

// Coalition-structure enumeration grows with the Bell numbers; capped lower.
inline constexpr int kMaxStructureAgents = 6;

// Tolerance for all equality-style floating-point checks in this module.
inline constexpr double kValueTol = 1e-9;

// Per-agent payoff distribution; entry i is agent i's share.
using PayoffVector = std::vector<double>;

/// A transferable-utility game given by its full characteristic function:
/// one real value per coalition, indexed by bitmask. The empty coalition
/// always has value zero and every value must be finite.
class CharacteristicGame {
 public:
  // `values` must have exactly 2^n entries, values[0] == 0, all finite.
  CharacteristicGame(int n, std::vector<double> values);

  // Tabulates v over all coalitions of n agents.
  static CharacteristicGame from_function(
      int n, const std::function<double(Mask)>& v);

  int num_agents() const { return n_; }
  Mask grand_coalition() const { return static_cast<Mask>((1u << n_) - 1); }
  std::size_t num_coalitions() const { return values_.size(); }

  double value(Mask coalition) const;

  const std::vector<double>& values() const { return values_; }

 private:
  int n_;
  std::vector<double> values_;
};

/// v(C u {i}) - v(C). Rejects i already in C and out-of-range agents.
double marginal_contribution(const CharacteristicGame& game, Mask coalition,
                             int agent);

// Text format: first line "n", then one "bitmask value" pair per line.
// The writer emits every coalition sorted by bitmask.
CharacteristicGame read_game(std::istream& in);
void write_game(std::ostream& out, const CharacteristicGame& game);

// Values i.i.d. uniform on [0, 1), then v(empty) forced to zero.
CharacteristicGame random_game(int n, Rng& rng);

// Supermodular by construction: v(C) = sum over nonempty T subset of C of
// m(T), with every m(T) drawn uniform on [0, 1). Convex for any draw.
CharacteristicGame random_convex_game(int n, Rng& rng);

// Averages v with its image under swapping agents i and j, making the two
// agents interchangeable.
CharacteristicGame symmetrized(const CharacteristicGame& game, int i, int j);

// Replaces v(C) with v(C \ {agent}), turning `agent` into a dummy.
CharacteristicGame with_dummy(const CharacteristicGame& game, int agent);

}  // namespace sqmarl::coopgame

#endif  // SQMARL_COOPGAME_GAME_HPP
