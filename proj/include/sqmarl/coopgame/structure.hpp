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

#ifndef SQMARL_COOPGAME_STRUCTURE_HPP
#define SQMARL_COOPGAME_STRUCTURE_HPP

#include <optional>
#include <vector>

#include "sqmarl/coopgame/game.hpp"

namespace sqmarl::coopgame {

/// A partition of the agent set into disjoint non-empty coalitions.
/// Blocks are kept sorted by ascending bitmask.
struct CoalitionStructure {
  std::vector<Mask> blocks;
};

/// All set partitions of {0..n-1}, each exactly once, in restricted-growth
/// order. The count equals the n-th Bell number. Requires
/// n <= kMaxStructureAgents.
std::vector<CoalitionStructure> enumerate_coalition_structures(int n);

struct ConvexityCheck {
  bool convex = true;
  // First violating disjoint pair, lowest bitmask first; valid iff !convex.
  Mask lhs = 0;
  Mask rhs = 0;
};

/// Tests superadditivity over every disjoint coalition pair:
/// v(C u D) >= v(C) + v(D). Requires n <= kMaxExactAgents.
ConvexityCheck is_convex(const CharacteristicGame& game);

struct CoreCheck {
  bool in_core = false;
  bool efficient = false;
  // Lowest-bitmask coalition whose payoff falls short of its value, if any.
  std::optional<Mask> violated;
};

/// A payoff vector is in the core when it is efficient (sums to the grand
/// coalition's value) and no coalition is paid less than its own value.
CoreCheck in_core(const CharacteristicGame& game, const PayoffVector& payoff);

/// True when the grand coalition's value weakly dominates the summed value
/// of every coalition structure. Rejects non-convex games. Requires
/// n <= kMaxStructureAgents.
bool grand_coalition_optimality_check(const CharacteristicGame& game);

}  // namespace sqmarl::coopgame

#endif  // SQMARL_COOPGAME_STRUCTURE_HPP
