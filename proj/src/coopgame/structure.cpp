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

#include "sqmarl/coopgame/structure.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace sqmarl::coopgame {

namespace {

void check_structure_capacity(int n, const char* op) {
  if (n > kMaxStructureAgents) {
    throw std::invalid_argument(
        std::string(op) + ": " + std::to_string(n) +
        " agents exceeds the partition-enumeration limit of " +
        std::to_string(kMaxStructureAgents));
  }
}

void check_exact_capacity(int n, const char* op) {
  if (n > kMaxExactAgents) {
    throw std::invalid_argument(
        std::string(op) + ": " + std::to_string(n) +
        " agents exceeds the exact-enumeration limit of " +
        std::to_string(kMaxExactAgents));
  }
}

// Restricted-growth-string recursion over agent assignments.
void emit_partitions(int n, int agent, int blocks_used,
                     std::vector<Mask>& blocks,
                     std::vector<CoalitionStructure>& out) {
  if (agent == n) {
    CoalitionStructure cs;
    cs.blocks = blocks;
    std::sort(cs.blocks.begin(), cs.blocks.end());
    out.push_back(std::move(cs));
    return;
  }
  const Mask bit = static_cast<Mask>(1u) << agent;
  for (int b = 0; b < blocks_used; ++b) {
    blocks[static_cast<std::size_t>(b)] |= bit;
    emit_partitions(n, agent + 1, blocks_used, blocks, out);
    blocks[static_cast<std::size_t>(b)] &= ~bit;
  }
  blocks.push_back(bit);
  emit_partitions(n, agent + 1, blocks_used + 1, blocks, out);
  blocks.pop_back();
}

}  // namespace

std::vector<CoalitionStructure> enumerate_coalition_structures(int n) {
  if (n < 1) {
    throw std::invalid_argument(
        "enumerate_coalition_structures: n must be >= 1");
  }
  check_structure_capacity(n, "enumerate_coalition_structures");
  std::vector<CoalitionStructure> out;
  std::vector<Mask> blocks;
  emit_partitions(n, 0, 0, blocks, out);
  return out;
}

ConvexityCheck is_convex(const CharacteristicGame& game) {
  const int n = game.num_agents();
  check_exact_capacity(n, "is_convex");
  const Mask grand = game.grand_coalition();
  const std::vector<double>& v = game.values();
  ConvexityCheck result;
  for (Mask c = 0; c <= grand; ++c) {
    const Mask rest = grand & ~c;
    // Enumerate submasks of the complement in ascending order.
    for (Mask d = 0;; d = (d - rest) & rest) {
      if (v[c | d] < v[c] + v[d] - kValueTol) {
        result.convex = false;
        result.lhs = c;
        result.rhs = d;
        return result;
      }
      if (d == rest) break;
    }
  }
  return result;
}

CoreCheck in_core(const CharacteristicGame& game, const PayoffVector& payoff) {
  const int n = game.num_agents();
  check_exact_capacity(n, "in_core");
  if (payoff.size() != static_cast<std::size_t>(n)) {
    throw std::invalid_argument("in_core: payoff vector has " +
                                std::to_string(payoff.size()) +
                                " entries for " + std::to_string(n) +
                                " agents");
  }
  const Mask grand = game.grand_coalition();
  const double total = std::accumulate(payoff.begin(), payoff.end(), 0.0);

  CoreCheck result;
  result.efficient = std::abs(total - game.value(grand)) <= kValueTol;
  for (Mask c = 1; c <= grand; ++c) {
    double share = 0.0;
    for (int i = 0; i < n; ++i) {
      if (c & (static_cast<Mask>(1u) << i)) {
        share += payoff[static_cast<std::size_t>(i)];
      }
    }
    if (share < game.value(c) - kValueTol) {
      result.violated = c;
      break;
    }
  }
  result.in_core = result.efficient && !result.violated.has_value();
  return result;
}

bool grand_coalition_optimality_check(const CharacteristicGame& game) {
  const int n = game.num_agents();
  check_structure_capacity(n, "grand_coalition_optimality_check");
  const ConvexityCheck convexity = is_convex(game);
  if (!convexity.convex) {
    throw std::invalid_argument(
        "grand_coalition_optimality_check: game is not convex (witness "
        "coalitions " +
        std::to_string(convexity.lhs) + " and " + std::to_string(convexity.rhs) +
        ")");
  }
  const double grand_value = game.value(game.grand_coalition());
  for (const CoalitionStructure& cs : enumerate_coalition_structures(n)) {
    double social = 0.0;
    for (Mask block : cs.blocks) social += game.value(block);
    if (grand_value < social - kValueTol) return false;
  }
  return true;
}

}  // namespace sqmarl::coopgame
