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

#ifndef SQMARL_HARNESS_EVAL_HPP
#define SQMARL_HARNESS_EVAL_HPP

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sqmarl/harness/stats.hpp"
#include "sqmarl/marl/nets.hpp"

namespace sqmarl::harness {

// Evaluation episode seeds derive from the master seed by a fixed splitting
// rule (split_seed(master, episode index)), so per-episode rollouts are
// independent and reproducible. Evaluation never performs updates.

/// Greedy traffic rollouts; an episode succeeds when no collision happened.
struct SuccessEval {
  double success_rate = 0.0;
  long episodes = 0;
};
SuccessEval evaluate_success_rate(const marl::Team& team,
                                  const std::string& difficulty, long episodes,
                                  int steps, std::uint64_t seed);

// Uniform-random-action floor for the same protocol.
SuccessEval random_success_rate(const std::string& difficulty, long episodes,
                                int steps, std::uint64_t seed);

/// Median greedy turns-to-capture on the prey task (episode cap when the
/// prey is never caught), with a uniform-random companion baseline.
struct CaptureEval {
  double median_turns = 0.0;
  long episodes = 0;
};
CaptureEval evaluate_capture_turns(const marl::Team& team, long episodes,
                                   std::uint64_t seed);
CaptureEval random_capture_turns(long episodes, std::uint64_t seed);

/// Per-agent credit at a fixed transition, as each algorithm defines it:
/// the sampled Shapley Q for sqddpg, the own critic value for the baselines.
double agent_credit(const marl::Team& team, int agent,
                    std::span<const double> state,
                    const std::vector<std::vector<double>>& actions,
                    int sample_size, Rng& rng);

/// Pearson correlation between per-predator credit and the reciprocal
/// predator-prey distance over uniformly sampled greedy transitions (one
/// pair per predator per transition).
struct PccEval {
  double coefficient = 0.0;
  double p_value = 1.0;
  long pairs = 0;
  std::optional<std::string> degenerate;  // set when variance vanished
};
PccEval pcc_credit_distance(const marl::Team& team, long transitions,
                            std::uint64_t seed);

/// One greedy prey-task trajectory with per-step, per-agent credits and the
/// min-max normalization (pooled over the whole trajectory per run).
struct CreditTraceRow {
  long step = 0;
  std::vector<std::array<double, 2>> positions;  // predators then prey
  std::vector<double> credit;                    // raw, one per predator
};
struct CreditTrace {
  std::vector<CreditTraceRow> rows;
  std::vector<double> normalized;  // row-major (step, agent)
  int n_agents = 0;
};
CreditTrace record_credit_trace(const marl::Team& team, std::uint64_t seed,
                                long max_steps);

void write_credit_trace_csv(const std::string& path, const CreditTrace& trace);
void write_trace_svg(const std::string& path, const CreditTrace& trace);

// Fraction of steps whose highest-credit agent is also the predator nearest
// to the prey.
double argmax_credit_nearest_rate(const CreditTrace& trace);

}  // namespace sqmarl::harness

#endif  // SQMARL_HARNESS_EVAL_HPP
