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

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstdlib>
#include <set>
#include <sstream>
#include <vector>

#include "doctest.h"
#include "sqmarl/env/env.hpp"
#include "sqmarl/env/particle.hpp"
#include "sqmarl/env/traffic.hpp"
#include "sqmarl/env/trajectory.hpp"

using namespace sqmarl;
using namespace sqmarl::env;

namespace {

std::vector<int> stay_actions(int n) { return std::vector<int>(n, kStay); }

// Runs `steps` random-action steps and returns the observation stream.
std::vector<std::vector<double>> random_run(Env& env, std::uint64_t seed,
                                            int steps) {
  Rng env_rng(seed);
  Rng action_rng(seed + 1);
  std::vector<std::vector<double>> states;
  EnvStep step = env.reset(env_rng);
  states.push_back(step.global_state);
  for (int t = 0; t < steps; ++t) {
    std::vector<int> actions(env.spec().n_agents);
    for (int& a : actions) a = action_rng.uniform_int(env.spec().n_actions);
    step = env.step(actions, env_rng);
    states.push_back(step.global_state);
    if (step.done) break;
  }
  return states;
}

}  // namespace

TEST_CASE("env_spec dimensions") {
  const EnvSpec coopnav = env_spec("coopnav");
  CHECK(coopnav.n_agents == 3);
  CHECK(coopnav.obs_dim == 14);
  CHECK(coopnav.n_actions == 5);
  CHECK(coopnav.episode_limit == 200);

  const EnvSpec prey = env_spec("prey");
  CHECK(prey.n_agents == 3);
  CHECK(prey.obs_dim == 12);
  CHECK(prey.n_actions == 5);
  CHECK(prey.episode_limit == 200);

  const EnvSpec easy = env_spec("traffic", "easy");
  CHECK(easy.n_agents == 5);
  CHECK(easy.n_actions == 2);
  CHECK(easy.episode_limit == 50);

  const EnvSpec hard = env_spec("traffic", "hard");
  CHECK(hard.n_agents == 20);
  CHECK(hard.episode_limit == 100);

  CHECK_THROWS(env_spec("chess"));
  CHECK_THROWS(env_spec("traffic", "extreme"));
}

TEST_CASE("coopnav reward is zero when agents sit on the targets") {
  CoopNavEnv env;
  Rng rng(1);
  env.reset(rng);
  const std::vector<Body> agents = {
      Body{{0.5, 0.5}, {0.0, 0.0}},
      Body{{-0.5, 0.5}, {0.0, 0.0}},
      Body{{0.0, -0.5}, {0.0, 0.0}},
  };
  const std::vector<std::array<double, 2>> landmarks = {
      {0.5, 0.5}, {-0.5, 0.5}, {0.0, -0.5}};
  env.place_for_test(agents, landmarks);
  const EnvStep step = env.step(stay_actions(3), rng);
  CHECK(step.reward == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(step.info.collisions == 0);
}

TEST_CASE("coopnav counts every overlapping pair once") {
  CoopNavEnv env;
  Rng rng(2);
  env.reset(rng);
  const std::vector<Body> agents(3, Body{{0.1, 0.1}, {0.0, 0.0}});
  const std::vector<std::array<double, 2>> landmarks(3, {0.1, 0.1});
  env.place_for_test(agents, landmarks);
  const EnvStep step = env.step(stay_actions(3), rng);
  // Distances all zero, three coincident agents = three colliding pairs.
  CHECK(step.reward == doctest::Approx(-3.0).epsilon(1e-12));
  CHECK(step.info.collisions == 3);
}

TEST_CASE("coopnav reward matches an independent distance sum") {
  CoopNavEnv env;
  Rng env_rng(3);
  Rng layout_rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    env.reset(env_rng);
    std::vector<Body> agents(3);
    std::vector<std::array<double, 2>> landmarks(3);
    for (Body& a : agents) {
      a.pos = {layout_rng.uniform(-1.0, 1.0), layout_rng.uniform(-1.0, 1.0)};
      a.vel = {0.0, 0.0};
    }
    for (std::array<double, 2>& l : landmarks) {
      l = {layout_rng.uniform(-1.0, 1.0), layout_rng.uniform(-1.0, 1.0)};
    }
    env.place_for_test(agents, landmarks);
    const EnvStep step = env.step(stay_actions(3), env_rng);

    double expected = 0.0;
    for (const std::array<double, 2>& l : landmarks) {
      double nearest = 1e18;
      for (const Body& a : agents) {
        nearest = std::min(nearest, std::hypot(a.pos[0] - l[0], a.pos[1] - l[1]));
      }
      expected -= nearest;
    }
    int pairs = 0;
    for (int i = 0; i < 3; ++i) {
      for (int j = i + 1; j < 3; ++j) {
        if (std::hypot(agents[i].pos[0] - agents[j].pos[0],
                       agents[i].pos[1] - agents[j].pos[1]) < 0.2) {
          ++pairs;
        }
      }
    }
    expected -= pairs;
    CHECK(step.reward == doctest::Approx(expected).epsilon(1e-12));
    CHECK(step.reward <= 0.0);
  }
}

TEST_CASE("coopnav observation layout") {
  CoopNavEnv env;
  Rng rng(4);
  env.reset(rng);
  const std::vector<Body> agents = {
      Body{{0.1, 0.2}, {0.0, 0.0}},
      Body{{-0.4, 0.3}, {0.0, 0.0}},
      Body{{0.6, -0.7}, {0.0, 0.0}},
  };
  const std::vector<std::array<double, 2>> landmarks = {
      {0.0, 0.0}, {0.5, 0.5}, {-0.5, -0.5}};
  env.place_for_test(agents, landmarks);
  const EnvStep step = env.step(stay_actions(3), rng);
  const std::vector<double>& obs = step.observations[0];
  REQUIRE(obs.size() == 14);
  // Own position and velocity, then landmark displacements, then others.
  CHECK(obs[0] == doctest::Approx(0.1));
  CHECK(obs[1] == doctest::Approx(0.2));
  CHECK(obs[4] == doctest::Approx(0.0 - 0.1));
  CHECK(obs[5] == doctest::Approx(0.0 - 0.2));
  CHECK(obs[10] == doctest::Approx(-0.4 - 0.1));
  CHECK(obs[11] == doctest::Approx(0.3 - 0.2));
  CHECK(step.global_state.size() == 42);
}

TEST_CASE("coopnav rejects malformed actions") {
  CoopNavEnv env;
  Rng rng(5);
  env.reset(rng);
  CHECK_THROWS(env.step(std::vector<int>{0, 1}, rng));
  CHECK_THROWS(env.step(std::vector<int>{0, 1, 9}, rng));
}

TEST_CASE("particle speed decays geometrically under stay") {
  CoopNavEnv env;
  Rng rng(6);
  env.reset(rng);
  std::vector<Body> agents = {
      Body{{0.0, 0.0}, {0.3, -0.4}},
      Body{{0.9, 0.9}, {0.0, 0.0}},
      Body{{-0.9, -0.9}, {0.0, 0.0}},
  };
  const std::vector<std::array<double, 2>> landmarks = {
      {0.0, 0.5}, {0.5, 0.0}, {-0.5, 0.0}};
  env.place_for_test(agents, landmarks);
  double speed = 0.5;
  for (int t = 0; t < 60; ++t) {
    env.step(stay_actions(3), rng);
    const std::array<double, 2> pos_before = env.entity_positions()[0];
    env.step(stay_actions(3), rng);
    const std::array<double, 2> pos_after = env.entity_positions()[0];
    speed = std::hypot(pos_after[0] - pos_before[0], pos_after[1] - pos_before[1]) / kDt;
    if (speed < 1e-6) break;
  }
  CHECK(speed < 1e-6);
}

TEST_CASE("prey capture pays ten and terminates") {
  PreyPredatorEnv env;
  Rng rng(7);
  env.reset(rng);
  const Body prey{{0.2, 0.2}, {0.0, 0.0}};
  const std::vector<Body> predators = {
      Body{{0.2, 0.2}, {0.0, 0.0}},  // overlapping the prey
      Body{{-0.8, -0.8}, {0.0, 0.0}},
      Body{{0.8, -0.8}, {0.0, 0.0}},
  };
  env.place_for_test(predators, prey);
  const EnvStep step = env.step(stay_actions(3), rng);
  CHECK(step.done);
  CHECK(step.info.captured);
  // Reward is 10 minus the (tiny, prey moved one tick) minimal distance.
  const std::vector<std::array<double, 2>> pos = env.entity_positions();
  double nearest = 1e18;
  for (int i = 0; i < 3; ++i) {
    nearest = std::min(nearest, std::hypot(pos[i][0] - pos[3][0], pos[i][1] - pos[3][1]));
  }
  CHECK(step.reward == doctest::Approx(10.0 - nearest));
  CHECK(step.reward > 9.9);
}

TEST_CASE("prey reward is the negative minimal distance") {
  PreyPredatorEnv env;
  Rng rng(8);
  env.reset(rng);
  const Body prey{{0.0, 0.0}, {0.0, 0.0}};
  const std::vector<Body> predators = {
      Body{{2.0, 0.0}, {0.0, 0.0}},
      Body{{-3.0, 0.0}, {0.0, 0.0}},
      Body{{0.0, 4.0}, {0.0, 0.0}},
  };
  env.place_for_test(predators, prey);
  const EnvStep step = env.step(stay_actions(3), rng);
  CHECK_FALSE(step.done);
  const std::vector<std::array<double, 2>> pos = env.entity_positions();
  double nearest = 1e18;
  for (int i = 0; i < 3; ++i) {
    nearest = std::min(nearest, std::hypot(pos[i][0] - pos[3][0], pos[i][1] - pos[3][1]));
  }
  CHECK(step.reward == doctest::Approx(-nearest));
  CHECK(step.reward == doctest::Approx(-2.0).epsilon(0.05));
}

TEST_CASE("prey reward ignores which predator is nearest") {
  // Two equidistant predators: swapping them changes nothing.
  auto run = [](bool swapped) {
    PreyPredatorEnv env;
    Rng rng(9);
    env.reset(rng);
    std::vector<Body> predators = {
        Body{{1.0, 0.0}, {0.0, 0.0}},
        Body{{-1.0, 0.0}, {0.0, 0.0}},
        Body{{0.0, 5.0}, {0.0, 0.0}},
    };
    if (swapped) std::swap(predators[0], predators[1]);
    env.place_for_test(predators, Body{{0.0, 0.0}, {0.0, 0.0}});
    return env.step(std::vector<int>(3, kStay), rng).reward;
  };
  CHECK(run(false) == doctest::Approx(run(true)));
}

TEST_CASE("prey observation includes prey velocity") {
  PreyPredatorEnv env;
  Rng rng(10);
  const EnvStep start = env.reset(rng);
  REQUIRE(start.observations[0].size() == 12);
  CHECK(start.global_state.size() == 36);
  const EnvStep step = env.step(stay_actions(3), rng);
  // Last two slots hold the prey velocity, identical across predators.
  const std::vector<double>& a = step.observations[0];
  const std::vector<double>& b = step.observations[1];
  CHECK(a[10] == b[10]);
  CHECK(a[11] == b[11]);
}

TEST_CASE("traffic parameters match the difficulty table") {
  const TrafficParams easy = traffic_params("easy");
  CHECK(easy.n_max == 5);
  CHECK(easy.p_arrive == doctest::Approx(0.3));
  CHECK(easy.dim == 7);
  CHECK(easy.lanes.size() == 2);
  CHECK_FALSE(easy.allow_turns);
  CHECK(build_routes(easy).size() == 2);  // one straight route per entry

  const TrafficParams medium = traffic_params("medium");
  CHECK(medium.n_max == 10);
  CHECK(medium.p_arrive == doctest::Approx(0.2));
  CHECK(medium.dim == 14);
  CHECK(medium.lanes.size() == 4);
  CHECK(build_routes(medium).size() == 12);  // 4 entries x 3 routes

  const TrafficParams hard = traffic_params("hard");
  CHECK(hard.n_max == 20);
  CHECK(hard.p_arrive == doctest::Approx(0.05));
  CHECK(hard.dim == 18);
  CHECK(hard.lanes.size() == 8);
  CHECK(build_routes(hard).size() == 56);  // 8 entries x 7 routes

  CHECK_THROWS(traffic_params("extreme"));
}

TEST_CASE("traffic routes are connected lane paths") {
  for (const std::string& difficulty : {"easy", "medium", "hard"}) {
    const TrafficParams params = traffic_params(difficulty);
    const std::vector<TrafficRoute> routes = build_routes(params);
    std::set<std::pair<int, int>> exits;
    for (const TrafficRoute& route : routes) {
      REQUIRE(route.cells.size() >= 2);
      // Starts at its entry lane's front cell.
      CHECK(route.cells.front() ==
            params.lanes[static_cast<std::size_t>(route.entry_lane)].cells.front());
      for (std::size_t k = 0; k + 1 < route.cells.size(); ++k) {
        const int dist = std::abs(route.cells[k].row - route.cells[k + 1].row) +
                         std::abs(route.cells[k].col - route.cells[k + 1].col);
        CHECK(dist == 1);
      }
      for (const Cell& cell : route.cells) {
        CHECK(cell.row >= 0);
        CHECK(cell.row < params.dim);
        CHECK(cell.col >= 0);
        CHECK(cell.col < params.dim);
      }
      exits.insert({route.cells.back().row, route.cells.back().col});
    }
    // Every route ends at some lane's exit cell.
    std::set<std::pair<int, int>> lane_ends;
    for (const Lane& lane : params.lanes) {
      lane_ends.insert({lane.cells.back().row, lane.cells.back().col});
    }
    for (const std::pair<int, int>& e : exits) {
      CHECK(lane_ends.contains(e));
    }
  }
}

TEST_CASE("traffic linear cost charges active time") {
  TrafficParams params = traffic_params("easy");
  params.p_arrive = 0.0;  // keep the road to one injected car
  TrafficEnv env(params);
  Rng rng(11);
  env.reset(rng);
  env.inject_car(0, 0);
  std::vector<int> actions(5, TrafficEnv::kBrake);
  EnvStep step;
  for (int t = 1; t <= 10; ++t) step = env.step(actions, rng);
  // Tenth consecutive active step: reward is -0.01 * 10.
  CHECK(step.reward == doctest::Approx(-0.1).epsilon(1e-12));
  CHECK(step.info.collisions == 0);
  CHECK(step.info.success);
}

TEST_CASE("traffic collision costs ten and clears success") {
  TrafficParams params = traffic_params("easy");
  params.p_arrive = 0.0;
  TrafficEnv env(params);
  Rng rng(12);
  env.reset(rng);
  // Route 0 runs east along row 3, route 1 south along column 3; both pass
  // the junction cell (3,3) at index 3.
  env.inject_car(0, 3);
  env.inject_car(1, 2);
  std::vector<int> actions(5, TrafficEnv::kBrake);
  actions[1] = TrafficEnv::kGas;  // drives into the occupied junction
  const EnvStep step = env.step(actions, rng);
  CHECK(step.info.collisions == 1);
  CHECK_FALSE(step.info.success);
  CHECK(step.reward == doctest::Approx(-10.0 - 0.02).epsilon(1e-9));
  CHECK(env.episode_collisions() == 1);
}

TEST_CASE("traffic removes cars at the end of their route") {
  TrafficParams params = traffic_params("easy");
  params.p_arrive = 0.0;
  TrafficEnv env(params);
  Rng rng(13);
  env.reset(rng);
  env.inject_car(0, 6);  // last cell of the eastbound route
  CHECK(env.active_cars() == 1);
  std::vector<int> actions(5, TrafficEnv::kGas);
  env.step(actions, rng);
  CHECK(env.active_cars() == 0);
}

TEST_CASE("traffic arrivals respect the cap and blocked entries") {
  TrafficParams params = traffic_params("easy");
  params.p_arrive = 1.0;
  TrafficEnv env(params);
  Rng rng(14);
  env.reset(rng);
  const std::vector<int> brake(5, TrafficEnv::kBrake);
  for (int t = 0; t < 20; ++t) {
    env.step(brake, rng);
    CHECK(env.active_cars() <= params.n_max);
    // Both entries hold a parked car after a few trials; nothing stacks.
    CHECK(env.active_cars() <= 2);
  }
  // With gas the road drains and refills without exceeding the cap.
  const std::vector<int> gas(5, TrafficEnv::kGas);
  for (int t = 0; t < 200; ++t) {
    const EnvStep step = env.step(gas, rng);
    CHECK(env.active_cars() <= params.n_max);
    CHECK(step.reward <= 0.0);
  }
}

TEST_CASE("traffic observations expose the neighborhood") {
  TrafficParams params = traffic_params("easy");
  params.p_arrive = 0.0;
  TrafficEnv env(params);
  Rng rng(15);
  env.reset(rng);
  const int slot_a = env.inject_car(0, 3);  // junction cell (3,3)
  const int slot_b = env.inject_car(1, 2);  // (2,3), directly north
  const std::vector<int> brake(5, TrafficEnv::kBrake);
  const EnvStep step = env.step(brake, rng);
  const std::vector<double>& obs = step.observations[static_cast<std::size_t>(slot_a)];
  REQUIRE(obs.size() == 14);
  CHECK(obs[0] == 1.0);                       // active flag
  CHECK(obs[1] == doctest::Approx(3.0 / 6));  // row
  CHECK(obs[2] == doctest::Approx(3.0 / 6));  // col
  // Neighborhood slots are row-major around the car; north = slot 5+1.
  CHECK(obs[5 + 1] == 1.0);
  CHECK(obs[5 + 4] == 0.0);  // own cell, self excluded
  const std::vector<double>& inactive = step.observations[4];
  for (double v : inactive) CHECK(v == 0.0);
  (void)slot_b;
}

TEST_CASE("environments are deterministic under a fixed seed") {
  for (const std::string& name : {"coopnav", "prey", "traffic"}) {
    std::unique_ptr<Env> a = make_env(name, "easy");
    std::unique_ptr<Env> b = make_env(name, "easy");
    const auto run_a = random_run(*a, 99, 40);
    const auto run_b = random_run(*b, 99, 40);
    REQUIRE(run_a.size() == run_b.size());
    for (std::size_t t = 0; t < run_a.size(); ++t) {
      CHECK(run_a[t] == run_b[t]);  // bit-exact
    }
  }
}

TEST_CASE("reward bounds hold under random play") {
  Rng seeds(123);
  for (int round = 0; round < 3; ++round) {
    std::unique_ptr<Env> coopnav = make_env("coopnav");
    Rng rng(seeds.next_u64());
    Rng actions(seeds.next_u64());
    coopnav->reset(rng);
    for (int t = 0; t < 50; ++t) {
      std::vector<int> a(3);
      for (int& x : a) x = actions.uniform_int(5);
      CHECK(coopnav->step(a, rng).reward <= 0.0);
    }

    std::unique_ptr<Env> prey = make_env("prey");
    prey->reset(rng);
    for (int t = 0; t < 50; ++t) {
      std::vector<int> a(3);
      for (int& x : a) x = actions.uniform_int(5);
      const EnvStep step = prey->step(a, rng);
      CHECK(step.reward <= 10.0);
      if (step.done) break;
    }
  }
}

TEST_CASE("trajectory dump format") {
  std::ostringstream out;
  TrajectoryWriter writer(out);
  writer.record(3, 14, 2, 1, -0.25, false);
  writer.record(3, 15, 0, 4, 10.0, true);
  CHECK(out.str() == "3 14 2 1 -0.25 0\n3 15 0 4 10 1\n");
}
