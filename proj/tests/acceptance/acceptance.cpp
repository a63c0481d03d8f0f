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

// End-to-end verification suite. Each numbered check prints exactly one
// PASS/FAIL line with its key numbers and enforces its stated tolerances
// and runtime budget. Long trainings are shared as on-disk fixtures so the
// checks can run (and re-run) independently.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iterator>
#include <memory>
#include <numeric>
#include <string>
#include <vector>

#include "sqmarl/coopgame/game.hpp"
#include "sqmarl/coopgame/shapley.hpp"
#include "sqmarl/coopgame/structure.hpp"
#include "sqmarl/env/env.hpp"
#include "sqmarl/harness/bundle.hpp"
#include "sqmarl/harness/config.hpp"
#include "sqmarl/harness/eval.hpp"
#include "sqmarl/harness/metrics.hpp"
#include "sqmarl/harness/train.hpp"
#include "sqmarl/marl/baselines.hpp"
#include "sqmarl/marl/sqddpg.hpp"
#include "sqmarl/nn/gumbel.hpp"

namespace {

namespace fs = std::filesystem;
using namespace sqmarl;
using Clock = std::chrono::steady_clock;

std::string g_fixture_dir = "acceptance_fixtures";

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

// ---------------------------------------------------------------------------
// Fixtures: full trainings at the table hyperparameters, cached on disk.

struct FixtureSpec {
  const char* name;
  const char* environment;
  const char* difficulty;
  const char* algorithm;
  std::uint64_t seed;
};

constexpr FixtureSpec kFixtures[] = {
    {"coopnav_s0", "coopnav", "easy", "sqddpg", 0},
    {"coopnav_s1", "coopnav", "easy", "sqddpg", 1},
    {"coopnav_s2", "coopnav", "easy", "sqddpg", 2},
    {"prey_sqddpg", "prey", "easy", "sqddpg", 0},
    {"prey_iddpg", "prey", "easy", "iddpg", 0},
    {"traffic_sqddpg", "traffic", "easy", "sqddpg", 0},
};

const FixtureSpec& fixture_spec(const std::string& name) {
  for (const FixtureSpec& fx : kFixtures) {
    if (name == fx.name) return fx;
  }
  throw std::invalid_argument("unknown fixture '" + name + "'");
}

fs::path fixture_path(const std::string& name) {
  return fs::path(g_fixture_dir) / name;
}

// Trains the fixture unless its outputs already exist.
void ensure_fixture(const std::string& name) {
  const FixtureSpec& fx = fixture_spec(name);
  const fs::path dir = fixture_path(name);
  if (fs::exists(dir / "metrics.csv") &&
      fs::exists(dir / "checkpoint" / "manifest.json")) {
    return;
  }
  harness::TrainConfig config =
      harness::default_config(fx.environment, fx.difficulty, fx.algorithm);
  config.seed = fx.seed;
  std::printf("[fixture] training %s (%s/%s, seed %llu, %ld episodes)\n",
              fx.name, fx.environment, fx.algorithm,
              static_cast<unsigned long long>(fx.seed), config.episodes);
  std::fflush(stdout);
  harness::run_training(config, dir.string(), nullptr);
}

marl::Team fixture_team(const std::string& name) {
  ensure_fixture(name);
  return harness::load_bundle((fixture_path(name) / "checkpoint").string()).team;
}

// ---------------------------------------------------------------------------
// 1. Shapley axioms on random games.

Outcome criterion_1() {
  const auto start = Clock::now();
  Rng rng(101);
  const long games = 500;
  long failures = 0;
  for (long k = 0; k < games; ++k) {
    const int n = 2 + rng.uniform_int(7);  // 2..8
    const coopgame::CharacteristicGame game = coopgame::random_game(n, rng);

    const coopgame::PayoffVector shapley = coopgame::exact_shapley(game);
    const double total = std::accumulate(shapley.begin(), shapley.end(), 0.0);
    if (std::abs(total - game.value(game.grand_coalition())) >= 1e-9) ++failures;

    const int i = rng.uniform_int(n);
    int j = rng.uniform_int(n - 1);
    if (j >= i) ++j;
    const coopgame::PayoffVector sym =
        coopgame::exact_shapley(coopgame::symmetrized(game, i, j));
    if (std::abs(sym[static_cast<std::size_t>(i)] -
                 sym[static_cast<std::size_t>(j)]) >= 1e-9) ++failures;

    const int d = rng.uniform_int(n);
    const coopgame::PayoffVector dummied =
        coopgame::exact_shapley(coopgame::with_dummy(game, d));
    if (std::abs(dummied[static_cast<std::size_t>(d)]) >= 1e-9) ++failures;
  }
  const double elapsed = seconds_since(start);
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "efficiency+symmetry+dummy on %ld games, %ld failures, %.2f s",
                games, failures, elapsed);
  return {failures == 0 && elapsed < 5.0, detail};
}

// ---------------------------------------------------------------------------
// 2. Shapley value of generated convex games lies in the core.

Outcome criterion_2() {
  const auto start = Clock::now();
  Rng rng(202);
  const long games = 200;
  long failures = 0;
  for (long k = 0; k < games; ++k) {
    const int n = 2 + rng.uniform_int(7);  // 2..8
    const coopgame::CharacteristicGame game = coopgame::random_convex_game(n, rng);
    if (!coopgame::in_core(game, coopgame::exact_shapley(game)).in_core) {
      ++failures;
    }
  }
  const double elapsed = seconds_since(start);
  char detail[128];
  std::snprintf(detail, sizeof detail, "core membership on %ld convex games, %ld failures, %.2f s",
                games, failures, elapsed);
  return {failures == 0 && elapsed < 10.0, detail};
}

// ---------------------------------------------------------------------------
// 3. Grand coalition dominates every coalition structure on convex games.

Outcome criterion_3() {
  const auto start = Clock::now();
  Rng rng(303);
  const long games = 100;
  long failures = 0;
  for (long k = 0; k < games; ++k) {
    const int n = 2 + rng.uniform_int(4);  // 2..5
    if (!coopgame::grand_coalition_optimality_check(
            coopgame::random_convex_game(n, rng))) {
      ++failures;
    }
  }
  const double elapsed = seconds_since(start);
  char detail[128];
  std::snprintf(detail, sizeof detail, "%ld convex games (n<=5), %ld failures, %.2f s",
                games, failures, elapsed);
  return {failures == 0 && elapsed < 5.0, detail};
}

// ---------------------------------------------------------------------------
// 4. Sampled estimators agree with exact enumeration within three standard
//    errors at 1e5 draws: the game-level Monte Carlo and the Shapley-Q
//    pipeline with an exact marginal-contribution lookup in place of the
//    learned critic.

Outcome criterion_4() {
  const auto start = Clock::now();
  Rng rng(405);
  const long samples = 100000;
  std::vector<coopgame::CharacteristicGame> games;
  games.emplace_back(3, std::vector<double>{0, 0, 0, 0, 0, 1, 1, 1});  // gloves
  for (int k = 0; k < 20; ++k) {
    games.push_back(coopgame::random_game(3 + rng.uniform_int(4), rng));
  }
  long checks = 0, failures = 0;
  for (const coopgame::CharacteristicGame& game : games) {
    const coopgame::PayoffVector exact = coopgame::exact_shapley(game);
    for (int i = 0; i < game.num_agents(); ++i) {
      const coopgame::McShapleyEstimate mc =
          coopgame::monte_carlo_shapley_detail(game, i, samples, rng);
      const double mc_bound = 3.0 * mc.sample_std / std::sqrt(samples) + 1e-12;
      ++checks;
      if (std::abs(mc.mean - exact[static_cast<std::size_t>(i)]) >= mc_bound) {
        ++failures;
      }

      // Shapley-Q estimator with the exact game as the critic.
      double mean = 0.0, m2 = 0.0;
      long count = 0;
      const double estimate = marl::shapley_q_estimate(
          i, game.num_agents(), static_cast<int>(samples),
          [&](const coopgame::OrderedCoalition& order, int joiner) {
            const double value =
                coopgame::marginal_contribution(game, order.mask(), joiner);
            ++count;
            const double d = value - mean;
            mean += d / static_cast<double>(count);
            m2 += d * (value - mean);
            return value;
          },
          rng);
      const double sq_std = std::sqrt(m2 / static_cast<double>(count - 1));
      const double sq_bound = 3.0 * sq_std / std::sqrt(samples) + 1e-12;
      ++checks;
      if (std::abs(estimate - exact[static_cast<std::size_t>(i)]) >= sq_bound) {
        ++failures;
      }
    }
  }
  const double elapsed = seconds_since(start);
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "%zu games, %ld estimator checks at M=1e5, %ld outside 3 SE, %.2f s",
                games.size(), checks, failures, elapsed);
  return {failures == 0 && elapsed < 30.0, detail};
}

// ---------------------------------------------------------------------------
// 5. Analytic gradients match central finite differences.

std::vector<double*> all_params(nn::Mlp& net) {
  std::vector<double*> out;
  for (std::vector<double>* block : {&net.w1, &net.b1, &net.w2, &net.b2}) {
    for (double& p : *block) out.push_back(&p);
  }
  return out;
}

std::vector<double> flat(const nn::MlpGrads& grads) {
  std::vector<double> out;
  for (const std::vector<double>* block :
       {&grads.w1, &grads.b1, &grads.w2, &grads.b2}) {
    out.insert(out.end(), block->begin(), block->end());
  }
  return out;
}

marl::Transition random_transition(const marl::TeamSpec& spec, Rng& rng) {
  marl::Transition tr;
  tr.state.resize(static_cast<std::size_t>(spec.state_dim()));
  tr.next_state.resize(static_cast<std::size_t>(spec.state_dim()));
  for (double& x : tr.state) x = rng.uniform(-1.0, 1.0);
  for (double& x : tr.next_state) x = rng.uniform(-1.0, 1.0);
  for (int j = 0; j < spec.n_agents; ++j) {
    tr.actions.push_back(nn::onehot(
        static_cast<std::size_t>(rng.uniform_int(spec.n_actions)),
        static_cast<std::size_t>(spec.n_actions)));
  }
  tr.reward = rng.uniform(-1.0, 1.0);
  tr.done = rng.uniform() < 0.25;
  return tr;
}

Outcome criterion_5() {
  const auto start = Clock::now();
  Rng rng(505);
  double worst_mlp = 0.0;

  // Raw network backward passes, away from the rectifier kink.
  for (int trial = 0; trial < 50; ++trial) {
    nn::Mlp net;
    std::vector<double> x;
    for (int attempt = 0;; ++attempt) {
      net = nn::make_mlp(1 + rng.uniform_int(5), 1 + rng.uniform_int(6),
                         1 + rng.uniform_int(3), rng);
      for (double& b : net.b1) b = rng.uniform(-0.1, 0.1);
      x.assign(static_cast<std::size_t>(net.in_dim), 0.0);
      for (double& v : x) v = rng.uniform(-1.0, 1.0);
      nn::MlpCache cache;
      nn::mlp_forward(net, x, &cache);
      double closest = 1e9;
      for (double z : cache.pre_hidden) closest = std::min(closest, std::abs(z));
      if (closest > 1e-3 || attempt > 200) break;
    }
    std::vector<double> upstream(static_cast<std::size_t>(net.out_dim));
    for (double& u : upstream) u = rng.uniform(-1.0, 1.0);

    nn::MlpCache cache;
    nn::mlp_forward(net, x, &cache);
    nn::MlpGrads grads = nn::zero_grads(net);
    nn::mlp_backward(net, cache, upstream, grads);
    const std::vector<double> analytic = flat(grads);
    const std::vector<double*> params = all_params(net);
    const double h = 1e-5;
    for (std::size_t k = 0; k < params.size(); ++k) {
      const double saved = *params[k];
      auto value = [&]() {
        double dot = 0.0;
        const std::vector<double> y = nn::mlp_forward(net, x);
        for (std::size_t o = 0; o < y.size(); ++o) dot += upstream[o] * y[o];
        return dot;
      };
      *params[k] = saved + h;
      const double up = value();
      *params[k] = saved - h;
      const double down = value();
      *params[k] = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double scale = std::max({std::abs(numeric), std::abs(analytic[k]), 1e-6});
      worst_mlp = std::max(worst_mlp, std::abs(numeric - analytic[k]) / scale);
    }
  }

  // Composed objectives: policy-side and value-side updates.
  double worst_actor = 0.0, worst_critic = 0.0;
  for (int trial = 0; trial < 10; ++trial) {
    const marl::TeamSpec spec{3, 3, 3};
    marl::Team team = marl::make_team(marl::Algo::kSqddpg, spec, 6, 1e-3, 1e-3, rng);
    std::vector<marl::Transition> transitions;
    for (int k = 0; k < 3; ++k) transitions.push_back(random_transition(spec, rng));
    marl::Batch batch;
    for (const marl::Transition& tr : transitions) batch.push_back(&tr);
    const marl::CoalitionDraws draws =
        marl::draw_coalitions(batch.size(), spec.n_agents, 2, rng);
    const marl::ActorNoise noise = marl::draw_actor_noise(batch.size(), spec, rng);
    const double h = 1e-6;

    const int agent = trial % spec.n_agents;
    const std::vector<double> actor_grad =
        flat(marl::sqddpg_actor_gradient(team, agent, batch, draws, noise));
    std::vector<double*> actor_params =
        all_params(team.agents[static_cast<std::size_t>(agent)].actor);
    for (std::size_t k = 0; k < actor_params.size(); ++k) {
      const double saved = *actor_params[k];
      *actor_params[k] = saved + h;
      const double up = marl::sqddpg_actor_objective(team, agent, batch, draws, noise);
      *actor_params[k] = saved - h;
      const double down = marl::sqddpg_actor_objective(team, agent, batch, draws, noise);
      *actor_params[k] = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double scale = std::max({std::abs(numeric), std::abs(actor_grad[k]), 1e-5});
      worst_actor = std::max(worst_actor, std::abs(numeric - actor_grad[k]) / scale);
    }

    const std::vector<nn::MlpGrads> critic_grads =
        marl::sqddpg_critic_gradients(team, batch, draws, 0.9);
    const std::vector<double> critic_grad =
        flat(critic_grads[static_cast<std::size_t>(agent)]);
    std::vector<double*> critic_params =
        all_params(team.agents[static_cast<std::size_t>(agent)].critic);
    for (std::size_t k = 0; k < critic_params.size(); ++k) {
      const double saved = *critic_params[k];
      *critic_params[k] = saved + h;
      const double up = marl::sqddpg_critic_loss(team, batch, draws, 0.9);
      *critic_params[k] = saved - h;
      const double down = marl::sqddpg_critic_loss(team, batch, draws, 0.9);
      *critic_params[k] = saved;
      const double numeric = (up - down) / (2.0 * h);
      const double scale = std::max({std::abs(numeric), std::abs(critic_grad[k]), 1e-5});
      worst_critic = std::max(worst_critic, std::abs(numeric - critic_grad[k]) / scale);
    }
  }

  const double elapsed = seconds_since(start);
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "max rel err: mlp %.2e (tol 1e-4), actor %.2e, critic %.2e (tol 1e-3), %.2f s",
                worst_mlp, worst_actor, worst_critic, elapsed);
  return {worst_mlp < 1e-4 && worst_actor < 1e-3 && worst_critic < 1e-3 &&
              elapsed < 10.0,
          detail};
}

// ---------------------------------------------------------------------------
// 6. The efficiency constraint pins the summed Shapley Q-values to a fixed
//    one-step reward.

Outcome criterion_6() {
  const auto start = Clock::now();
  Rng rng(606);
  const marl::TeamSpec spec{3, 2, 2};
  marl::Team team = marl::make_team(marl::Algo::kSqddpg, spec, 32, 1e-4, 1e-3, rng);
  marl::Transition tr;
  tr.state = {0.3, -0.2, 0.5, 0.1, -0.4, 0.8};
  tr.next_state = tr.state;
  for (int j = 0; j < 3; ++j) tr.actions.push_back(nn::onehot(j % 2 ? 1 : 0, 2));
  tr.reward = 3.0;
  tr.done = true;
  const marl::Batch batch = {&tr};
  for (int step = 0; step < 2000; ++step) {
    marl::sqddpg_critic_update(team, batch, 1, 0.9, rng);
  }
  double total = 0.0;
  for (int i = 0; i < 3; ++i) {
    total += marl::sqddpg_exact_q(team, i, tr.state, tr.actions);
  }
  const double error = std::abs(total - 3.0);
  char detail[128];
  std::snprintf(detail, sizeof detail,
                "sum of Shapley Q after 2000 updates: %.4f (|err| %.4f, tol 0.01), %.2f s",
                total, error, seconds_since(start));
  return {error <= 0.01, detail};
}

// ---------------------------------------------------------------------------
// 7. Desk-scale learning on the navigation task across three seeds.

Outcome criterion_7() {
  const auto start = Clock::now();
  double first_sum = 0.0, final_sum = 0.0;
  for (const char* name : {"coopnav_s0", "coopnav_s1", "coopnav_s2"}) {
    ensure_fixture(name);
    const std::vector<harness::MetricsRecord> metrics = harness::read_metrics_csv(
        (fixture_path(name) / "metrics.csv").string());
    const std::size_t tenth = metrics.size() / 10;
    double first = 0.0, final = 0.0;
    for (std::size_t k = 0; k < tenth; ++k) first += metrics[k].mean_step_reward;
    for (std::size_t k = metrics.size() - tenth; k < metrics.size(); ++k) {
      final += metrics[k].mean_step_reward;
    }
    first_sum += first / static_cast<double>(tenth);
    final_sum += final / static_cast<double>(tenth);
  }
  const double first10 = first_sum / 3.0;
  const double final10 = final_sum / 3.0;

  // Uniform-random baseline over 500 fresh episodes.
  double random_total = 0.0;
  long random_steps = 0;
  for (long e = 0; e < 500; ++e) {
    Rng rng(split_seed(0xc0ffee, static_cast<std::uint64_t>(e)));
    std::unique_ptr<env::Env> environment = env::make_env("coopnav");
    env::EnvStep step = environment->reset(rng);
    for (int t = 0; t < 200; ++t) {
      std::vector<int> actions(3);
      for (int& a : actions) a = rng.uniform_int(5);
      step = environment->step(actions, rng);
      random_total += step.reward;
      ++random_steps;
    }
  }
  const double random_mean = random_total / static_cast<double>(random_steps);

  const double gap = final10 - random_mean;  // random-to-best gap
  const bool pass = gap > 0.0 && (final10 - first10) >= 0.3 * gap &&
                    (final10 - random_mean) >= 0.3 * gap;
  char detail[200];
  std::snprintf(detail, sizeof detail,
                "seeds {0,1,2}: first10%% %.3f, final10%% %.3f, random %.3f, "
                "gap %.3f, improvement %.3f (need >= %.3f), %.0f s",
                first10, final10, random_mean, gap, final10 - first10,
                0.3 * gap, seconds_since(start));
  return {pass, detail};
}

// ---------------------------------------------------------------------------
// 8. Trained predators capture at most half as slowly as random ones.

Outcome criterion_8() {
  const auto start = Clock::now();
  const marl::Team team = fixture_team("prey_sqddpg");
  const harness::CaptureEval trained = harness::evaluate_capture_turns(team, 100, 31337);
  const harness::CaptureEval baseline = harness::random_capture_turns(100, 31337);
  const bool pass = trained.median_turns <= 0.5 * baseline.median_turns;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "median turns to capture: trained %.1f vs random %.1f over %ld episodes, %.0f s",
                trained.median_turns, baseline.median_turns, trained.episodes,
                seconds_since(start));
  return {pass, detail};
}

// ---------------------------------------------------------------------------
// 9. Traffic (easy) success rate of the trained policy.

Outcome criterion_9() {
  const auto start = Clock::now();
  const marl::Team team = fixture_team("traffic_sqddpg");
  const harness::SuccessEval trained =
      harness::evaluate_success_rate(team, "easy", 1000, 20, 90210);
  const harness::SuccessEval baseline =
      harness::random_success_rate("easy", 1000, 20, 90210);
  const bool pass = trained.success_rate >= 0.85 && baseline.success_rate < 0.9;
  char detail[160];
  std::snprintf(detail, sizeof detail,
                "success rate over 1000 episodes x 20 steps: trained %.4f "
                "(need >= 0.85), random floor %.4f, %.0f s",
                trained.success_rate, baseline.success_rate, seconds_since(start));
  return {pass, detail};
}

// ---------------------------------------------------------------------------
// 10. Credit tracks the reciprocal prey distance.

Outcome criterion_10() {
  const auto start = Clock::now();
  const marl::Team sqddpg = fixture_team("prey_sqddpg");
  const marl::Team iddpg = fixture_team("prey_iddpg");
  const harness::PccEval sq = harness::pcc_credit_distance(sqddpg, 1000, 4242);
  const harness::PccEval id = harness::pcc_credit_distance(iddpg, 1000, 4242);

  // Step-weighted argmax-credit-vs-nearest rate pooled over several greedy
  // episodes (single captures can be only a few steps long).
  double nearest_hits = 0.0, nearest_steps = 0.0;
  for (std::uint64_t trace_seed = 11; trace_seed < 19; ++trace_seed) {
    const harness::CreditTrace trace =
        harness::record_credit_trace(sqddpg, trace_seed, 200);
    nearest_hits += harness::argmax_credit_nearest_rate(trace) *
                    static_cast<double>(trace.rows.size());
    nearest_steps += static_cast<double>(trace.rows.size());
  }
  const double nearest_rate = nearest_hits / nearest_steps;

  const bool clause1 = !sq.degenerate.has_value() && sq.coefficient > 0.15 &&
                       sq.p_value < 0.01;
  const bool clause2 =
      !id.degenerate.has_value() &&
      std::abs(id.coefficient) < std::abs(sq.coefficient);
  char detail[240];
  std::snprintf(detail, sizeof detail,
                "sqddpg pcc %.4f (p %.3e) need >0.15/p<0.01; iddpg pcc %.4f "
                "(closer-to-zero clause %s); trace argmax-credit = nearest %.0f%%, %.0f s",
                sq.coefficient, sq.p_value, id.coefficient,
                clause2 ? "holds" : "FAILS", 100.0 * nearest_rate,
                seconds_since(start));
  return {clause1 && clause2, detail};
}

// ---------------------------------------------------------------------------
// 11. Bitwise determinism of 100-episode runs on every environment.

Outcome criterion_11() {
  const auto start = Clock::now();
  bool all_identical = true;
  std::string detail = "byte-identical metrics:";
  for (const char* environment : {"coopnav", "prey", "traffic"}) {
    harness::TrainConfig config =
        harness::default_config(environment, "easy", "sqddpg");
    config.episodes = 100;
    config.seed = 17;
    const fs::path base = fs::temp_directory_path() / "sqmarl_acceptance_det";
    fs::remove_all(base);
    const harness::TrainOutput a =
        harness::run_training(config, (base / "a").string());
    const harness::TrainOutput b =
        harness::run_training(config, (base / "b").string());
    std::ifstream fa(a.metrics_path, std::ios::binary);
    std::ifstream fb(b.metrics_path, std::ios::binary);
    std::string sa((std::istreambuf_iterator<char>(fa)), {});
    std::string sb((std::istreambuf_iterator<char>(fb)), {});
    const bool same = !sa.empty() && sa == sb;
    all_identical = all_identical && same;
    detail += std::string(" ") + environment + (same ? "=yes" : "=NO");
    fs::remove_all(base);
  }
  const double elapsed = seconds_since(start);
  char timing[48];
  std::snprintf(timing, sizeof timing, ", %.0f s (budget 120)", elapsed);
  detail += timing;
  return {all_identical && elapsed < 120.0, detail};
}

// ---------------------------------------------------------------------------

struct Criterion {
  int number;
  const char* label;
  std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> all = {
      {1, "shapley axioms", criterion_1},
      {2, "convex-game core membership", criterion_2},
      {3, "grand-coalition optimality", criterion_3},
      {4, "sampled-estimator validity", criterion_4},
      {5, "gradient checks", criterion_5},
      {6, "efficiency constraint", criterion_6},
      {7, "navigation desk-scale learning", criterion_7},
      {8, "predator-prey capture speed", criterion_8},
      {9, "traffic success rate", criterion_9},
      {10, "credit fairness", criterion_10},
      {11, "run determinism", criterion_11},
  };
  return all;
}

int run_criterion(const Criterion& criterion) {
  Outcome outcome;
  try {
    outcome = criterion.run();
  } catch (const std::exception& error) {
    outcome.pass = false;
    outcome.detail = std::string("exception: ") + error.what();
  }
  std::printf("[%s] criterion %d: %s — %s\n", outcome.pass ? "PASS" : "FAIL",
              criterion.number, criterion.label, outcome.detail.c_str());
  std::fflush(stdout);
  return outcome.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  std::string setup;
  int wanted = 0;
  bool all = false;
  for (int a = 1; a < argc; ++a) {
    const std::string arg = argv[a];
    auto next = [&]() -> std::string {
      if (a + 1 >= argc) throw std::invalid_argument("missing value for " + arg);
      return argv[++a];
    };
    try {
      if (arg == "--fixtures") g_fixture_dir = next();
      else if (arg == "--setup") setup = next();
      else if (arg == "--criterion") wanted = std::stoi(next());
      else if (arg == "--all") all = true;
      else {
        std::fprintf(stderr,
                     "usage: acceptance [--fixtures DIR] (--setup NAME | "
                     "--criterion N | --all)\n");
        return 2;
      }
    } catch (const std::exception& error) {
      std::fprintf(stderr, "error: %s\n", error.what());
      return 2;
    }
  }

  try {
    if (!setup.empty()) {
      ensure_fixture(setup);
      std::printf("[fixture] %s ready\n", setup.c_str());
      return 0;
    }
    int failures = 0;
    if (all) {
      for (const Criterion& criterion : criteria()) {
        failures += run_criterion(criterion);
      }
      return failures == 0 ? 0 : 1;
    }
    if (wanted >= 1 && wanted <= static_cast<int>(criteria().size())) {
      return run_criterion(criteria()[static_cast<std::size_t>(wanted - 1)]);
    }
  } catch (const std::exception& error) {
    std::fprintf(stderr, "error: %s\n", error.what());
    return 1;
  }
  std::fprintf(stderr, "nothing to do; pass --all, --criterion N or --setup NAME\n");
  return 2;
}
