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

#ifndef SQMARL_ENV_TRAFFIC_HPP
#define SQMARL_ENV_TRAFFIC_HPP

#include <string>
#include <vector>

#include "sqmarl/env/env.hpp"

namespace sqmarl::env {

struct Cell {
  int row = 0;
  int col = 0;
  bool operator==(const Cell&) const = default;
};

/// One directed lane: a straight run of cells driven first to last.
struct Lane {
  std::vector<Cell> cells;
};

/// Difficulty-level layout and arrival parameters; the three presets follow
/// the standard grid sizes (7, 14, 18), car caps and arrival rates.
struct TrafficParams {
  std::string tag;  // "easy", "medium", "hard"
  int dim = 7;
  double p_arrive = 0.3;
  int n_max = 5;
  int episode_limit = 50;
  bool allow_turns = false;
  std::vector<Lane> lanes;  // entries are lane fronts, exits lane backs
};

TrafficParams traffic_params(const std::string& difficulty);

/// A route is the cell path from one entry to one permitted exit.
struct TrafficRoute {
  int entry_lane = 0;
  std::vector<Cell> cells;
};

// Builds every route with a breadth-first search over the lane graph: a car
// may always advance along its lane and, where a junction cell lies on two
// lanes, continue along the crossing lane. Exits on the entry's own arm are
// excluded, so each entry reaches every other arm exactly once.
std::vector<TrafficRoute> build_routes(const TrafficParams& params);

/// Gridworld traffic control: cars follow fixed routes, choosing only gas
/// (advance one cell) or brake (stay). The global reward charges each active
/// car 0.01 per step of continuous activity and 10 per collision cell.
/// Policies control a fixed block of n_max car slots; inactive slots see
/// zero observations and their actions are ignored.
class TrafficEnv : public Env {
 public:
  static constexpr int kGas = 0;
  static constexpr int kBrake = 1;

  explicit TrafficEnv(TrafficParams params);

  EnvStep reset(Rng& rng) override;
  EnvStep step(std::span<const int> actions, Rng& rng) override;
  const EnvSpec& spec() const override { return spec_; }
  std::string name() const override { return "traffic"; }
  std::vector<std::array<double, 2>> entity_positions() const override;

  const std::vector<TrafficRoute>& routes() const { return routes_; }
  int active_cars() const;
  int episode_collisions() const { return episode_collisions_; }

  // Test access: force a car into the lowest free slot at a given route
  // offset. Returns the slot index.
  int inject_car(int route, int route_pos);

 private:
  struct Car {
    bool active = false;
    int route = -1;
    int route_pos = 0;
    int active_steps = 0;  // t_i, steps continuously on the road
  };

  void try_arrival(Rng& rng);
  bool cell_occupied(const Cell& cell, int ignore_slot = -1) const;
  EnvStep observe(double reward, int collisions) const;

  EnvSpec spec_;
  TrafficParams params_;
  std::vector<TrafficRoute> routes_;
  std::vector<int> entry_lanes_;                  // distinct entry lanes
  std::vector<std::vector<int>> routes_by_entry_; // route ids per entry lane
  std::vector<Car> cars_;
  int episode_collisions_ = 0;
};

}  // namespace sqmarl::env

#endif  // SQMARL_ENV_TRAFFIC_HPP
