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

#include <bit>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "sqmarl/coopgame/game.hpp"
#include "sqmarl/coopgame/shapley.hpp"
#include "sqmarl/coopgame/structure.hpp"
#include "sqmarl/env/env.hpp"
#include "sqmarl/env/trajectory.hpp"
#include "sqmarl/harness/bundle.hpp"
#include "sqmarl/harness/config.hpp"
#include "sqmarl/harness/eval.hpp"
#include "sqmarl/harness/stats.hpp"
#include "sqmarl/harness/train.hpp"
#include "sqmarl/marl/nets.hpp"

namespace {

namespace fs = std::filesystem;
using namespace sqmarl;

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;

// Training output lands under --out when given, else under the directory
// named by SQMARL_OUT_DIR (falling back to ./runs), in a per-run subfolder.
std::string resolve_out_dir(const std::string& explicit_out,
                            const harness::TrainConfig& config) {
  if (!explicit_out.empty()) return explicit_out;
  const char* base = std::getenv("SQMARL_OUT_DIR");
  const fs::path root = base != nullptr && *base != '\0' ? base : "runs";
  std::string name = config.environment;
  if (config.environment == "traffic") name += "-" + config.difficulty;
  name += "-" + config.algorithm + "-seed" + std::to_string(config.seed);
  return (root / name).string();
}

int default_eval_steps(const std::string& difficulty) {
  if (difficulty == "easy") return 20;
  if (difficulty == "medium") return 40;
  return 60;
}

struct TrainFlags {
  std::string env = "coopnav";
  std::string difficulty = "easy";
  std::string algo = "sqddpg";
  std::string config_file;
  std::string out;
  long seed = 0;
  long episodes = -1;
  long sample_size = -1;
  long hidden = -1;
  long episode_length = -1;
  long batch = -1;
  double gamma = -1.0;
  double actor_lr = -1.0;
  double critic_lr = -1.0;
};

int cmd_train(const TrainFlags& flags) {
  harness::TrainConfig config =
      harness::default_config(flags.env, flags.difficulty, flags.algo);
  if (!flags.config_file.empty()) {
    config = harness::apply_config_file(flags.config_file, config);
  }
  config.seed = static_cast<std::uint64_t>(flags.seed);
  if (flags.episodes >= 0) config.episodes = flags.episodes;
  if (flags.sample_size >= 0) config.sample_size = static_cast<int>(flags.sample_size);
  if (flags.hidden >= 0) config.hidden_units = static_cast<int>(flags.hidden);
  if (flags.episode_length >= 0) config.episode_length = static_cast<int>(flags.episode_length);
  if (flags.batch >= 0) config.batch_size = static_cast<int>(flags.batch);
  if (flags.gamma >= 0.0) config.gamma = flags.gamma;
  if (flags.actor_lr >= 0.0) config.actor_lr = flags.actor_lr;
  if (flags.critic_lr >= 0.0) config.critic_lr = flags.critic_lr;
  harness::validate_config(config);

  const std::string out_dir = resolve_out_dir(flags.out, config);
  std::cout << "training " << config.algorithm << " on " << config.environment
            << (config.environment == "traffic" ? "/" + config.difficulty : "")
            << " for " << config.episodes << " episodes (seed " << config.seed
            << ") -> " << out_dir << "\n";
  const harness::TrainOutput output =
      harness::run_training(config, out_dir, &std::cout);
  std::cout << "checkpoint: " << output.checkpoint_dir << "\n";
  return kExitOk;
}

int cmd_eval_success(const std::string& checkpoint, long episodes, int steps,
                     long seed) {
  const harness::LoadedBundle bundle = harness::load_bundle(checkpoint);
  if (bundle.meta.environment != "traffic") {
    std::cerr << "eval-success expects a traffic checkpoint\n";
    return kExitUsage;
  }
  const int used_steps =
      steps > 0 ? steps : default_eval_steps(bundle.meta.difficulty);
  const harness::SuccessEval eval = harness::evaluate_success_rate(
      bundle.team, bundle.meta.difficulty, episodes, used_steps,
      static_cast<std::uint64_t>(seed));
  std::printf("success-rate: %.4f over %ld episodes (%d steps, %s)\n",
              eval.success_rate, eval.episodes, used_steps,
              bundle.meta.difficulty.c_str());
  return kExitOk;
}

int cmd_eval_pcc(const std::string& checkpoint, long samples, long seed) {
  const harness::LoadedBundle bundle = harness::load_bundle(checkpoint);
  if (bundle.meta.environment != "prey") {
    std::cerr << "eval-pcc expects a prey checkpoint\n";
    return kExitUsage;
  }
  const harness::PccEval eval = harness::pcc_credit_distance(
      bundle.team, samples, static_cast<std::uint64_t>(seed));
  if (eval.degenerate.has_value()) {
    std::printf("pcc: undefined (%s)\n", eval.degenerate->c_str());
    return kExitCheckFailed;
  }
  std::printf("pcc: %.4f two-tailed-p: %.4e pairs: %ld\n", eval.coefficient,
              eval.p_value, eval.pairs);
  return kExitOk;
}

int cmd_trace(const std::string& checkpoint, const std::string& out_csv,
              const std::string& out_svg, const std::string& dump, long seed,
              long max_steps) {
  const harness::LoadedBundle bundle = harness::load_bundle(checkpoint);
  if (bundle.meta.environment != "prey") {
    std::cerr << "trace expects a prey checkpoint\n";
    return kExitUsage;
  }
  const harness::CreditTrace trace = harness::record_credit_trace(
      bundle.team, static_cast<std::uint64_t>(seed), max_steps);
  harness::write_credit_trace_csv(out_csv, trace);
  harness::write_trace_svg(out_svg, trace);
  if (!dump.empty()) {
    std::ofstream dump_out(dump, std::ios::binary);
    env::TrajectoryWriter writer(dump_out);
    // Replays the greedy trajectory through the same seeded environment to
    // record executed actions and rewards.
    Rng rng(split_seed(static_cast<std::uint64_t>(seed), 0x74726163));
    std::unique_ptr<env::Env> environment = env::make_env("prey");
    env::EnvStep step = environment->reset(rng);
    for (long t = 0; t < static_cast<long>(trace.rows.size()); ++t) {
      const auto actions = marl::select_actions(bundle.team, step.global_state,
                                                false, rng);
      const std::vector<int> indices = marl::action_indices(actions);
      step = environment->step(indices, rng);
      for (std::size_t i = 0; i < indices.size(); ++i) {
        writer.record(0, t, static_cast<int>(i), indices[i], step.reward,
                      step.done);
      }
      if (step.done) break;
    }
  }
  std::printf("trace: %zu steps, argmax-credit matches nearest predator %.1f%%\n",
              trace.rows.size(), 100.0 * harness::argmax_credit_nearest_rate(trace));
  std::printf("wrote %s and %s\n", out_csv.c_str(), out_svg.c_str());
  return kExitOk;
}

int cmd_oracle_check(long games, long seed) {
  using namespace sqmarl::coopgame;
  Rng rng(static_cast<std::uint64_t>(seed));
  long efficiency = 0, symmetry = 0, dummy = 0;
  for (long k = 0; k < games; ++k) {
    const int n = 2 + rng.uniform_int(7);
    const CharacteristicGame game = random_game(n, rng);
    const PayoffVector shapley = exact_shapley(game);
    double total = 0.0;
    for (double x : shapley) total += x;
    if (std::abs(total - game.value(game.grand_coalition())) < 1e-9) ++efficiency;

    const int i = rng.uniform_int(n);
    int j = rng.uniform_int(n - 1);
    if (j >= i) ++j;
    const PayoffVector sym = exact_shapley(symmetrized(game, i, j));
    if (std::abs(sym[static_cast<std::size_t>(i)] -
                 sym[static_cast<std::size_t>(j)]) < 1e-9) ++symmetry;

    const int d = rng.uniform_int(n);
    const PayoffVector dummied = exact_shapley(with_dummy(game, d));
    if (std::abs(dummied[static_cast<std::size_t>(d)]) < 1e-9) ++dummy;
  }

  long core_ok = 0;
  for (long k = 0; k < games; ++k) {
    const int n = 2 + rng.uniform_int(7);
    const CharacteristicGame game = random_convex_game(n, rng);
    if (in_core(game, exact_shapley(game)).in_core) ++core_ok;
  }

  const long structure_games = std::min<long>(games, 100);
  long grand_ok = 0;
  for (long k = 0; k < structure_games; ++k) {
    const int n = 2 + rng.uniform_int(4);
    if (grand_coalition_optimality_check(random_convex_game(n, rng))) ++grand_ok;
  }

  // Join-order sampling against the closed-form coalition weights.
  const long draws = 100000;
  std::vector<long> counts(8, 0);
  for (long k = 0; k < draws; ++k) {
    const OrderedCoalition c = sample_ordered_coalition(rng, 1, 4);
    // Subsets of {0, 2, 3} indexed by compressed bits.
    const Mask mask = c.mask();
    const int idx = static_cast<int>((mask & 1u) | ((mask >> 1) & 6u));
    counts[static_cast<std::size_t>(idx)]++;
  }
  std::vector<double> probs(8, 0.0);
  for (int idx = 0; idx < 8; ++idx) {
    probs[static_cast<std::size_t>(idx)] =
        coalition_weight(4, std::popcount(static_cast<unsigned>(idx)));
  }
  const double sampling_p = harness::chi_square_gof_p(counts, probs);

  long estimator_ok = 0, estimator_total = 0;
  const CharacteristicGame glove(3, {0, 0, 0, 0, 0, 1, 1, 1});
  std::vector<CharacteristicGame> estimator_games = {glove};
  for (int k = 0; k < 5; ++k) {
    estimator_games.push_back(random_game(2 + rng.uniform_int(5), rng));
  }
  for (const CharacteristicGame& game : estimator_games) {
    const PayoffVector exact = exact_shapley(game);
    for (int i = 0; i < game.num_agents(); ++i) {
      const McShapleyEstimate est =
          monte_carlo_shapley_detail(game, i, 100000, rng);
      const double bound = 3.0 * est.sample_std / std::sqrt(100000.0) + 1e-12;
      ++estimator_total;
      if (std::abs(est.mean - exact[static_cast<std::size_t>(i)]) < bound) {
        ++estimator_ok;
      }
    }
  }

  std::printf("efficiency:            %ld/%ld\n", efficiency, games);
  std::printf("symmetry:              %ld/%ld\n", symmetry, games);
  std::printf("dummy:                 %ld/%ld\n", dummy, games);
  std::printf("core-membership: %ld/%ld\n", core_ok, games);
  std::printf("grand-coalition:       %ld/%ld\n", grand_ok, structure_games);
  std::printf("sampling-consistency:  chi-square p = %.4f (%s)\n", sampling_p,
              sampling_p > 0.001 ? "pass" : "FAIL");
  std::printf("estimator-convergence: %ld/%ld\n", estimator_ok, estimator_total);

  const bool all_ok = efficiency == games && symmetry == games &&
                      dummy == games && core_ok == games &&
                      grand_ok == structure_games && sampling_p > 0.001 &&
                      estimator_ok == estimator_total;
  return all_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shapley-credit multi-agent RL testbed"};
  app.require_subcommand(1);

  TrainFlags train_flags;
  CLI::App* train = app.add_subcommand("train", "train one algorithm on one task");
  train->add_option("--env", train_flags.env, "coopnav, prey or traffic");
  train->add_option("--difficulty", train_flags.difficulty, "traffic difficulty");
  train->add_option("--algo", train_flags.algo,
                    "sqddpg, iddpg, maddpg, ia2c or coma");
  train->add_option("--config", train_flags.config_file, "key=value config file");
  train->add_option("--out", train_flags.out, "output directory");
  train->add_option("--seed", train_flags.seed, "master seed");
  train->add_option("--episodes", train_flags.episodes, "override episode count");
  train->add_option("--sample-size", train_flags.sample_size,
                    "join orders per Shapley Q estimate");
  train->add_option("--hidden", train_flags.hidden, "hidden units");
  train->add_option("--episode-length", train_flags.episode_length,
                    "max steps per episode");
  train->add_option("--batch", train_flags.batch, "minibatch size");
  train->add_option("--gamma", train_flags.gamma, "discount factor");
  train->add_option("--actor-lr", train_flags.actor_lr, "policy learning rate");
  train->add_option("--critic-lr", train_flags.critic_lr, "critic learning rate");

  std::string checkpoint;
  long eval_episodes = 1000;
  int eval_steps = 0;
  long eval_seed = 1000003;
  CLI::App* eval_success =
      app.add_subcommand("eval-success", "traffic success rate of a checkpoint");
  eval_success->add_option("--checkpoint", checkpoint, "checkpoint directory")
      ->required();
  eval_success->add_option("--episodes", eval_episodes, "evaluation episodes");
  eval_success->add_option("--steps", eval_steps,
                           "steps per episode (default by difficulty)");
  eval_success->add_option("--seed", eval_seed, "evaluation master seed");

  long pcc_samples = 1000;
  CLI::App* eval_pcc = app.add_subcommand(
      "eval-pcc", "credit vs 1/prey-distance correlation of a prey checkpoint");
  eval_pcc->add_option("--checkpoint", checkpoint, "checkpoint directory")
      ->required();
  eval_pcc->add_option("--samples", pcc_samples, "transition samples");
  eval_pcc->add_option("--seed", eval_seed, "evaluation master seed");

  std::string out_csv = "credit_trace.csv";
  std::string out_svg = "trace.svg";
  std::string dump_file;
  long trace_steps = 200;
  CLI::App* trace = app.add_subcommand(
      "trace", "replay one greedy episode and export per-step credits");
  trace->add_option("--checkpoint", checkpoint, "checkpoint directory")->required();
  trace->add_option("--out-csv", out_csv, "credit table output");
  trace->add_option("--out-svg", out_svg, "plot output");
  trace->add_option("--dump", dump_file, "also dump the trajectory records");
  trace->add_option("--seed", eval_seed, "episode seed");
  trace->add_option("--max-steps", trace_steps, "cap on recorded steps");

  long oracle_games = 200;
  long oracle_seed = 7;
  CLI::App* oracle = app.add_subcommand(
      "oracle-check", "run the cooperative-game property suite");
  oracle->add_option("--games", oracle_games, "games per property");
  oracle->add_option("--seed", oracle_seed, "generator seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& help) {
    app.exit(help);
    return kExitOk;
  } catch (const CLI::ParseError& error) {
    app.exit(error);
    return kExitUsage;
  }

  try {
    if (train->parsed()) return cmd_train(train_flags);
    if (eval_success->parsed()) {
      return cmd_eval_success(checkpoint, eval_episodes, eval_steps, eval_seed);
    }
    if (eval_pcc->parsed()) return cmd_eval_pcc(checkpoint, pcc_samples, eval_seed);
    if (trace->parsed()) {
      return cmd_trace(checkpoint, out_csv, out_svg, dump_file, eval_seed,
                       trace_steps);
    }
    if (oracle->parsed()) return cmd_oracle_check(oracle_games, oracle_seed);
  } catch (const std::invalid_argument& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& error) {
    std::cerr << "error: " << error.what() << "\n";
    return kExitCheckFailed;
  }
  return kExitUsage;
}
