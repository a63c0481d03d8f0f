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

#include "sqmarl/env/traffic.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <map>
#include <stdexcept>
#include <string>

namespace sqmarl::env {

namespace {

constexpr double kStepCostPerTick = 0.01;
constexpr double kCollisionPenalty = 10.0;

Lane horizontal_lane(int row, int from_col, int to_col) {
  Lane lane;
  const int step = from_col <= to_col ? 1 : -1;
  for (int c = from_col; c != to_col + step; c += step) lane.cells.push_back({row, c});
  return lane;
}

Lane vertical_lane(int col, int from_row, int to_row) {
  Lane lane;
  const int step = from_row <= to_row ? 1 : -1;
  for (int r = from_row; r != to_row + step; r += step) lane.cells.push_back({r, col});
  return lane;
}

int manhattan(const Cell& a, const Cell& b) {
  return std::abs(a.row - b.row) + std::abs(a.col - b.col);
}

}  // namespace

TrafficParams traffic_params(const std::string& difficulty) {
  TrafficParams p;
  if (difficulty == "easy") {
    // Two one-way roads crossing once on a 7x7 grid; straight routes only.
    p.tag = "easy";
    p.dim = 7;
    p.p_arrive = 0.3;
    p.n_max = 5;
    p.episode_limit = 50;
    p.allow_turns = false;
    p.lanes.push_back(horizontal_lane(3, 0, 6));  // eastbound
    p.lanes.push_back(vertical_lane(3, 0, 6));    // southbound
    return p;
  }
  if (difficulty == "medium") {
    // One junction of two-way roads on a 14x14 grid, right-hand running.
    p.tag = "medium";
    p.dim = 14;
    p.p_arrive = 0.2;
    p.n_max = 10;
    p.episode_limit = 50;
    p.allow_turns = true;
    p.lanes.push_back(horizontal_lane(7, 0, 13));   // eastbound
    p.lanes.push_back(horizontal_lane(6, 13, 0));   // westbound
    p.lanes.push_back(vertical_lane(6, 0, 13));     // southbound
    p.lanes.push_back(vertical_lane(7, 13, 0));     // northbound
    return p;
  }
  if (difficulty == "hard") {
    // Four junctions of two-way roads on an 18x18 grid.
    p.tag = "hard";
    p.dim = 18;
    p.p_arrive = 0.05;
    p.n_max = 20;
    p.episode_limit = 100;
    p.allow_turns = true;
    for (int row : {5, 13}) p.lanes.push_back(horizontal_lane(row, 0, 17));
    for (int row : {4, 12}) p.lanes.push_back(horizontal_lane(row, 17, 0));
    for (int col : {4, 12}) p.lanes.push_back(vertical_lane(col, 0, 17));
    for (int col : {5, 13}) p.lanes.push_back(vertical_lane(col, 17, 0));
    return p;
  }
  throw std::invalid_argument("traffic_params: unknown difficulty '" +
                              difficulty + "'");
}

std::vector<TrafficRoute> build_routes(const TrafficParams& params) {
  const int n_lanes = static_cast<int>(params.lanes.size());
  // Cell -> (lane, index) memberships; junction cells belong to two lanes.
  std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> membership;
  for (int l = 0; l < n_lanes; ++l) {
    const std::vector<Cell>& cells = params.lanes[static_cast<std::size_t>(l)].cells;
    for (int k = 0; k < static_cast<int>(cells.size()); ++k) {
      membership[{cells[static_cast<std::size_t>(k)].row,
                  cells[static_cast<std::size_t>(k)].col}].push_back({l, k});
    }
  }

  std::vector<TrafficRoute> routes;
  for (int entry = 0; entry < n_lanes; ++entry) {
    const Cell entry_cell = params.lanes[static_cast<std::size_t>(entry)].cells.front();

    // Breadth-first search over (lane, index) nodes.
    std::map<std::pair<int, int>, std::pair<int, int>> parent;
    std::deque<std::pair<int, int>> frontier;
    frontier.push_back({entry, 0});
    parent[{entry, 0}] = {-1, -1};
    while (!frontier.empty()) {
      const auto [lane, index] = frontier.front();
      frontier.pop_front();
      const std::vector<Cell>& cells = params.lanes[static_cast<std::size_t>(lane)].cells;
      const Cell here = cells[static_cast<std::size_t>(index)];

      std::vector<std::pair<int, int>> next;
      if (index + 1 < static_cast<int>(cells.size())) next.push_back({lane, index + 1});
      if (params.allow_turns) {
        for (const std::pair<int, int>& member : membership[{here.row, here.col}]) {
          const auto [other_lane, other_index] = member;
          if (other_lane == lane) continue;
          const std::vector<Cell>& other_cells =
              params.lanes[static_cast<std::size_t>(other_lane)].cells;
          if (other_index + 1 < static_cast<int>(other_cells.size())) {
            next.push_back({other_lane, other_index + 1});
          }
        }
      }
      for (const std::pair<int, int>& node : next) {
        if (parent.contains(node)) continue;
        parent[node] = {lane, index};
        frontier.push_back(node);
      }
    }

    // One route per reachable exit, skipping exits on the entry's own arm.
    for (int exit_lane = 0; exit_lane < n_lanes; ++exit_lane) {
      const std::vector<Cell>& exit_cells =
          params.lanes[static_cast<std::size_t>(exit_lane)].cells;
      const std::pair<int, int> exit_node = {
          exit_lane, static_cast<int>(exit_cells.size()) - 1};
      if (!parent.contains(exit_node)) continue;
      if (manhattan(entry_cell, exit_cells.back()) <= 2) continue;

      TrafficRoute route;
      route.entry_lane = entry;
      std::pair<int, int> node = exit_node;
      while (node.first != -1) {
        route.cells.push_back(params.lanes[static_cast<std::size_t>(node.first)]
                                  .cells[static_cast<std::size_t>(node.second)]);
        node = parent.at(node);
      }
      std::reverse(route.cells.begin(), route.cells.end());
      routes.push_back(std::move(route));
    }
  }
  return routes;
}

TrafficEnv::TrafficEnv(TrafficParams params)
    : params_(std::move(params)), routes_(build_routes(params_)) {
  if (routes_.empty()) throw std::invalid_argument("TrafficEnv: no routes");
  spec_.n_agents = params_.n_max;
  spec_.obs_dim = 14;
  spec_.n_actions = 2;
  spec_.episode_limit = params_.episode_limit;
  for (int r = 0; r < static_cast<int>(routes_.size()); ++r) {
    const int lane = routes_[static_cast<std::size_t>(r)].entry_lane;
    auto it = std::find(entry_lanes_.begin(), entry_lanes_.end(), lane);
    if (it == entry_lanes_.end()) {
      entry_lanes_.push_back(lane);
      routes_by_entry_.push_back({r});
    } else {
      routes_by_entry_[static_cast<std::size_t>(it - entry_lanes_.begin())].push_back(r);
    }
  }
  cars_.assign(static_cast<std::size_t>(params_.n_max), Car{});
}

int TrafficEnv::active_cars() const {
  int active = 0;
  for (const Car& car : cars_) active += car.active ? 1 : 0;
  return active;
}

bool TrafficEnv::cell_occupied(const Cell& cell, int ignore_slot) const {
  for (int s = 0; s < static_cast<int>(cars_.size()); ++s) {
    if (s == ignore_slot || !cars_[static_cast<std::size_t>(s)].active) continue;
    const Car& car = cars_[static_cast<std::size_t>(s)];
    if (routes_[static_cast<std::size_t>(car.route)]
            .cells[static_cast<std::size_t>(car.route_pos)] == cell) {
      return true;
    }
  }
  return false;
}

void TrafficEnv::try_arrival(Rng& rng) {
  if (rng.uniform() >= params_.p_arrive) return;
  if (active_cars() >= params_.n_max) return;
  const int entry_idx = rng.uniform_int(static_cast<int>(entry_lanes_.size()));
  const std::vector<int>& candidates =
      routes_by_entry_[static_cast<std::size_t>(entry_idx)];
  const int route = candidates[static_cast<std::size_t>(
      rng.uniform_int(static_cast<int>(candidates.size())))];
  const Cell& entry_cell = routes_[static_cast<std::size_t>(route)].cells.front();
  if (cell_occupied(entry_cell)) return;  // entry blocked, arrival lost
  for (Car& car : cars_) {
    if (car.active) continue;
    car.active = true;
    car.route = route;
    car.route_pos = 0;
    car.active_steps = 0;
    return;
  }
}

int TrafficEnv::inject_car(int route, int route_pos) {
  if (route < 0 || route >= static_cast<int>(routes_.size())) {
    throw std::invalid_argument("inject_car: route out of range");
  }
  const int len = static_cast<int>(routes_[static_cast<std::size_t>(route)].cells.size());
  if (route_pos < 0 || route_pos >= len) {
    throw std::invalid_argument("inject_car: position outside the route");
  }
  for (int s = 0; s < static_cast<int>(cars_.size()); ++s) {
    Car& car = cars_[static_cast<std::size_t>(s)];
    if (car.active) continue;
    car.active = true;
    car.route = route;
    car.route_pos = route_pos;
    car.active_steps = 0;
    return s;
  }
  throw std::runtime_error("inject_car: all slots busy");
}

EnvStep TrafficEnv::reset(Rng& rng) {
  cars_.assign(static_cast<std::size_t>(params_.n_max), Car{});
  episode_collisions_ = 0;
  try_arrival(rng);
  return observe(0.0, 0);
}

EnvStep TrafficEnv::step(std::span<const int> actions, Rng& rng) {
  if (actions.size() != cars_.size()) {
    throw std::invalid_argument("traffic step: expected " +
                                std::to_string(cars_.size()) + " actions, got " +
                                std::to_string(actions.size()));
  }
  for (int a : actions) {
    if (a != kGas && a != kBrake) {
      throw std::invalid_argument("traffic step: action must be gas(0) or brake(1)");
    }
  }

  // Move: gas advances one cell along the route; reaching the end removes
  // the car. Brake keeps the car in place.
  for (std::size_t s = 0; s < cars_.size(); ++s) {
    Car& car = cars_[s];
    if (!car.active || actions[s] != kGas) continue;
    const int len = static_cast<int>(routes_[static_cast<std::size_t>(car.route)].cells.size());
    if (car.route_pos + 1 >= len) {
      car = Car{};  // mission complete
    } else {
      car.route_pos += 1;
    }
  }

  // Collisions: each cell holding two or more cars counts once this step.
  std::map<std::pair<int, int>, int> occupancy;
  for (const Car& car : cars_) {
    if (!car.active) continue;
    const Cell& cell = routes_[static_cast<std::size_t>(car.route)]
                           .cells[static_cast<std::size_t>(car.route_pos)];
    occupancy[{cell.row, cell.col}] += 1;
  }
  int collisions = 0;
  for (const auto& [cell, count] : occupancy) {
    if (count >= 2) ++collisions;
  }
  episode_collisions_ += collisions;

  double reward = -kCollisionPenalty * collisions;
  for (Car& car : cars_) {
    if (!car.active) continue;
    car.active_steps += 1;
    reward -= kStepCostPerTick * car.active_steps;
  }

  try_arrival(rng);
  return observe(reward, collisions);
}

EnvStep TrafficEnv::observe(double reward, int collisions) const {
  // Occupancy counts for the 3x3 neighborhoods.
  std::map<std::pair<int, int>, int> occupancy;
  for (const Car& car : cars_) {
    if (!car.active) continue;
    const Cell& cell = routes_[static_cast<std::size_t>(car.route)]
                           .cells[static_cast<std::size_t>(car.route_pos)];
    occupancy[{cell.row, cell.col}] += 1;
  }

  EnvStep result;
  result.observations.reserve(cars_.size());
  const double denom = static_cast<double>(params_.dim - 1);
  const double route_denom =
      static_cast<double>(std::max<std::size_t>(routes_.size() - 1, 1));
  for (const Car& car : cars_) {
    std::vector<double> obs(static_cast<std::size_t>(spec_.obs_dim), 0.0);
    if (car.active) {
      const TrafficRoute& route = routes_[static_cast<std::size_t>(car.route)];
      const Cell& cell = route.cells[static_cast<std::size_t>(car.route_pos)];
      obs[0] = 1.0;
      obs[1] = cell.row / denom;
      obs[2] = cell.col / denom;
      obs[3] = route.cells.size() > 1
                   ? static_cast<double>(car.route_pos) /
                         static_cast<double>(route.cells.size() - 1)
                   : 0.0;
      obs[4] = static_cast<double>(car.route) / route_denom;
      std::size_t k = 5;
      for (int dr = -1; dr <= 1; ++dr) {
        for (int dc = -1; dc <= 1; ++dc, ++k) {
          const auto it = occupancy.find({cell.row + dr, cell.col + dc});
          int count = it == occupancy.end() ? 0 : it->second;
          if (dr == 0 && dc == 0) count -= 1;  // exclude self
          obs[k] = static_cast<double>(count);
        }
      }
    }
    result.observations.push_back(std::move(obs));
  }
  for (const std::vector<double>& obs : result.observations) {
    result.global_state.insert(result.global_state.end(), obs.begin(), obs.end());
  }
  result.reward = reward;
  result.done = false;
  result.info.collisions = collisions;
  result.info.episode_collisions = episode_collisions_;
  result.info.success = episode_collisions_ == 0;
  return result;
}

std::vector<std::array<double, 2>> TrafficEnv::entity_positions() const {
  std::vector<std::array<double, 2>> out;
  for (const Car& car : cars_) {
    if (!car.active) {
      out.push_back({-1.0, -1.0});
      continue;
    }
    const Cell& cell = routes_[static_cast<std::size_t>(car.route)]
                           .cells[static_cast<std::size_t>(car.route_pos)];
    out.push_back({static_cast<double>(cell.row), static_cast<double>(cell.col)});
  }
  return out;
}

}  // namespace sqmarl::env
