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

#include "sqmarl/harness/eval.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <stdexcept>

#include "sqmarl/env/env.hpp"
#include "sqmarl/marl/baselines.hpp"
#include "sqmarl/marl/sqddpg.hpp"
#include "sqmarl/nn/gumbel.hpp"

namespace sqmarl::harness {

namespace {

constexpr double kMinDistance = 1e-6;  // clamp before taking reciprocals

std::vector<int> random_action_indices(const env::EnvSpec& spec, Rng& rng) {
  std::vector<int> actions(static_cast<std::size_t>(spec.n_agents));
  for (int& a : actions) a = rng.uniform_int(spec.n_actions);
  return actions;
}

double median(std::vector<double> xs) {
  if (xs.empty()) throw std::invalid_argument("median: empty input");
  std::sort(xs.begin(), xs.end());
  const std::size_t half = xs.size() / 2;
  if (xs.size() % 2 == 1) return xs[half];
  return 0.5 * (xs[half - 1] + xs[half]);
}

}  // namespace

SuccessEval evaluate_success_rate(const marl::Team& team,
                                  const std::string& difficulty, long episodes,
                                  int steps, std::uint64_t seed) {
  if (team.spec.n_agents != env::env_spec("traffic", difficulty).n_agents) {
    throw std::invalid_argument(
        "evaluate_success_rate: checkpoint does not match the difficulty");
  }
  long clean = 0;
  for (long e = 0; e < episodes; ++e) {
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(e)));
    std::unique_ptr<env::Env> environment = env::make_env("traffic", difficulty);
    env::EnvStep step = environment->reset(rng);
    bool success = true;
    for (int t = 0; t < steps; ++t) {
      const std::vector<std::vector<double>> actions = marl::select_actions(
          team, step.global_state, /*explore=*/false, rng);
      step = environment->step(marl::action_indices(actions), rng);
      success = step.info.episode_collisions == 0;
    }
    clean += success ? 1 : 0;
  }
  return SuccessEval{static_cast<double>(clean) / static_cast<double>(episodes),
                     episodes};
}

SuccessEval random_success_rate(const std::string& difficulty, long episodes,
                                int steps, std::uint64_t seed) {
  long clean = 0;
  const env::EnvSpec spec = env::env_spec("traffic", difficulty);
  for (long e = 0; e < episodes; ++e) {
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(e)));
    std::unique_ptr<env::Env> environment = env::make_env("traffic", difficulty);
    env::EnvStep step = environment->reset(rng);
    bool success = true;
    for (int t = 0; t < steps; ++t) {
      step = environment->step(random_action_indices(spec, rng), rng);
      success = step.info.episode_collisions == 0;
    }
    clean += success ? 1 : 0;
  }
  return SuccessEval{static_cast<double>(clean) / static_cast<double>(episodes),
                     episodes};
}

namespace {

double capture_episode(const marl::Team* team, long episode, std::uint64_t seed) {
  Rng rng(split_seed(seed, static_cast<std::uint64_t>(episode)));
  std::unique_ptr<env::Env> environment = env::make_env("prey");
  const env::EnvSpec spec = environment->spec();
  env::EnvStep step = environment->reset(rng);
  for (int t = 1; t <= spec.episode_limit; ++t) {
    const std::vector<int> actions =
        team != nullptr
            ? marl::action_indices(marl::select_actions(
                  *team, step.global_state, /*explore=*/false, rng))
            : random_action_indices(spec, rng);
    step = environment->step(actions, rng);
    if (step.done) return static_cast<double>(t);
  }
  return static_cast<double>(spec.episode_limit);
}

}  // namespace

CaptureEval evaluate_capture_turns(const marl::Team& team, long episodes,
                                   std::uint64_t seed) {
  std::vector<double> turns;
  turns.reserve(static_cast<std::size_t>(episodes));
  for (long e = 0; e < episodes; ++e) turns.push_back(capture_episode(&team, e, seed));
  return CaptureEval{median(std::move(turns)), episodes};
}

CaptureEval random_capture_turns(long episodes, std::uint64_t seed) {
  std::vector<double> turns;
  turns.reserve(static_cast<std::size_t>(episodes));
  for (long e = 0; e < episodes; ++e) turns.push_back(capture_episode(nullptr, e, seed));
  return CaptureEval{median(std::move(turns)), episodes};
}

double agent_credit(const marl::Team& team, int agent,
                    std::span<const double> state,
                    const std::vector<std::vector<double>>& actions,
                    int sample_size, Rng& rng) {
  const marl::AgentNet& net = team.agents[static_cast<std::size_t>(agent)];
  switch (team.algo) {
    case marl::Algo::kSqddpg:
      // Exact expectation over join orders for small teams, sampling beyond.
      if (team.spec.n_agents <= 8) {
        return marl::sqddpg_exact_q(team, agent, state, actions);
      }
      return marl::sqddpg_sampled_q(team, agent, state, actions, sample_size, rng);
    case marl::Algo::kIddpg:
      return nn::mlp_forward(net.critic, marl::iddpg_critic_input(
                                             team.spec, agent, state, actions))[0];
    case marl::Algo::kMaddpg:
      return nn::mlp_forward(net.critic, marl::maddpg_critic_input(
                                             team.spec, state, actions))[0];
    case marl::Algo::kComa: {
      const std::vector<double> q = nn::mlp_forward(
          net.critic, marl::coma_critic_input(team.spec, agent, state, actions));
      return q[nn::argmax(actions[static_cast<std::size_t>(agent)])];
    }
    case marl::Algo::kIa2c:
      return nn::mlp_forward(net.critic,
                             marl::obs_slice(team.spec, state, agent))[0];
  }
  throw std::logic_error("agent_credit: bad enum");
}

namespace {

struct PreySample {
  std::vector<double> state;
  std::vector<std::vector<double>> actions;
  std::array<double, 3> prey_distance{};  // per predator, at the pre-step state
};

// Greedy prey-task rollouts until `wanted` transitions accumulate.
std::vector<PreySample> collect_prey_transitions(const marl::Team& team,
                                                 long wanted,
                                                 std::uint64_t seed) {
  std::vector<PreySample> samples;
  samples.reserve(static_cast<std::size_t>(wanted) * 2);
  long episode = 0;
  while (static_cast<long>(samples.size()) < wanted) {
    Rng rng(split_seed(seed, static_cast<std::uint64_t>(episode)));
    std::unique_ptr<env::Env> environment = env::make_env("prey");
    env::EnvStep step = environment->reset(rng);
    for (int t = 0; t < environment->spec().episode_limit; ++t) {
      PreySample sample;
      sample.state = step.global_state;
      const std::vector<std::array<double, 2>> positions =
          environment->entity_positions();
      for (int i = 0; i < 3; ++i) {
        sample.prey_distance[static_cast<std::size_t>(i)] = std::hypot(
            positions[static_cast<std::size_t>(i)][0] - positions[3][0],
            positions[static_cast<std::size_t>(i)][1] - positions[3][1]);
      }
      sample.actions = marl::select_actions(team, step.global_state,
                                            /*explore=*/false, rng);
      step = environment->step(marl::action_indices(sample.actions), rng);
      samples.push_back(std::move(sample));
      if (step.done || static_cast<long>(samples.size()) >= wanted * 4) break;
    }
    ++episode;
  }
  return samples;
}

}  // namespace

PccEval pcc_credit_distance(const marl::Team& team, long transitions,
                            std::uint64_t seed) {
  if (team.spec.n_agents != 3) {
    throw std::invalid_argument("pcc_credit_distance: prey checkpoints have 3 agents");
  }
  std::vector<PreySample> pool =
      collect_prey_transitions(team, transitions, split_seed(seed, 0x706f6f6c));
  Rng pick(split_seed(seed, 0x7069636b));
  Rng credit_rng(split_seed(seed, 0x63726564));

  std::vector<double> credits, reciprocal;
  credits.reserve(static_cast<std::size_t>(transitions) * 3);
  reciprocal.reserve(static_cast<std::size_t>(transitions) * 3);
  for (long k = 0; k < transitions; ++k) {
    const PreySample& sample =
        pool[static_cast<std::size_t>(pick.uniform_int(static_cast<int>(pool.size())))];
    for (int i = 0; i < 3; ++i) {
      credits.push_back(agent_credit(team, i, sample.state, sample.actions,
                                     team.spec.n_agents, credit_rng));
      reciprocal.push_back(
          1.0 / std::max(sample.prey_distance[static_cast<std::size_t>(i)],
                         kMinDistance));
    }
  }

  PccEval eval;
  eval.pairs = static_cast<long>(credits.size());
  try {
    const PearsonResult pearson = pearson_correlation(credits, reciprocal);
    eval.coefficient = pearson.r;
    eval.p_value = pearson.p_two_tailed;
  } catch (const std::invalid_argument& error) {
    eval.degenerate = error.what();
  }
  return eval;
}

CreditTrace record_credit_trace(const marl::Team& team, std::uint64_t seed,
                                long max_steps) {
  if (team.spec.n_agents != 3) {
    throw std::invalid_argument("record_credit_trace: prey checkpoints have 3 agents");
  }
  CreditTrace trace;
  trace.n_agents = 3;
  Rng rng(split_seed(seed, 0x74726163));
  Rng credit_rng(split_seed(seed, 0x63726564));
  std::unique_ptr<env::Env> environment = env::make_env("prey");
  env::EnvStep step = environment->reset(rng);
  const long limit = std::min<long>(max_steps, environment->spec().episode_limit);
  for (long t = 0; t < limit; ++t) {
    CreditTraceRow row;
    row.step = t;
    row.positions = environment->entity_positions();
    const std::vector<std::vector<double>> actions =
        marl::select_actions(team, step.global_state, /*explore=*/false, rng);
    for (int i = 0; i < 3; ++i) {
      row.credit.push_back(agent_credit(team, i, step.global_state, actions,
                                        team.spec.n_agents, credit_rng));
    }
    trace.rows.push_back(std::move(row));
    step = environment->step(marl::action_indices(actions), rng);
    if (step.done) break;
  }

  // Min-max over the whole trajectory, pooled across agents.
  std::vector<double> pooled;
  for (const CreditTraceRow& row : trace.rows) {
    pooled.insert(pooled.end(), row.credit.begin(), row.credit.end());
  }
  trace.normalized = minmax_normalize(pooled);
  return trace;
}

void write_credit_trace_csv(const std::string& path, const CreditTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_credit_trace_csv: cannot open " + path);
  out << "step,agent,credit,credit_norm,x,y,prey_x,prey_y\n";
  char line[256];
  for (std::size_t r = 0; r < trace.rows.size(); ++r) {
    const CreditTraceRow& row = trace.rows[r];
    const std::array<double, 2>& prey = row.positions.back();
    for (int i = 0; i < trace.n_agents; ++i) {
      const std::size_t flat = r * static_cast<std::size_t>(trace.n_agents) +
                               static_cast<std::size_t>(i);
      std::snprintf(line, sizeof line,
                    "%ld,%d,%.10g,%.10g,%.10g,%.10g,%.10g,%.10g\n", row.step, i,
                    row.credit[static_cast<std::size_t>(i)],
                    trace.normalized[flat],
                    row.positions[static_cast<std::size_t>(i)][0],
                    row.positions[static_cast<std::size_t>(i)][1], prey[0],
                    prey[1]);
      out << line;
    }
  }
}

double argmax_credit_nearest_rate(const CreditTrace& trace) {
  if (trace.rows.empty()) return 0.0;
  long hits = 0;
  for (const CreditTraceRow& row : trace.rows) {
    const std::array<double, 2>& prey = row.positions.back();
    int nearest = 0;
    double best = std::numeric_limits<double>::infinity();
    for (int i = 0; i < trace.n_agents; ++i) {
      const double d = std::hypot(row.positions[static_cast<std::size_t>(i)][0] - prey[0],
                                  row.positions[static_cast<std::size_t>(i)][1] - prey[1]);
      if (d < best) {
        best = d;
        nearest = i;
      }
    }
    if (static_cast<int>(nn::argmax(row.credit)) == nearest) ++hits;
  }
  return static_cast<double>(hits) / static_cast<double>(trace.rows.size());
}

namespace {

// Maps world coordinates into an SVG viewport.
struct Viewport {
  double x0, y0, x1, y1;
  double px, py, width, height;
  double x(double wx) const { return px + (wx - x0) / (x1 - x0) * width; }
  double y(double wy) const { return py + (y1 - wy) / (y1 - y0) * height; }
};

const char* const kPalette[] = {"#d1495b", "#00798c", "#edae49", "#6a4c93"};

}  // namespace

void write_trace_svg(const std::string& path, const CreditTrace& trace) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_trace_svg: cannot open " + path);
  if (trace.rows.empty()) throw std::invalid_argument("write_trace_svg: empty trace");

  double lo = -1.0, hi = 1.0;
  for (const CreditTraceRow& row : trace.rows) {
    for (const std::array<double, 2>& p : row.positions) {
      lo = std::min({lo, p[0], p[1]});
      hi = std::max({hi, p[0], p[1]});
    }
  }
  const Viewport world{lo, lo, hi, hi, 20, 20, 360, 360};
  const Viewport chart{0.0, 0.0,
                       static_cast<double>(trace.rows.size() - 1 + 1e-9), 1.0,
                       420, 20, 360, 360};

  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"400\" "
         "viewBox=\"0 0 800 400\">\n";
  out << "<rect x=\"0\" y=\"0\" width=\"800\" height=\"400\" fill=\"white\"/>\n";
  out << "<rect x=\"20\" y=\"20\" width=\"360\" height=\"360\" fill=\"none\" "
         "stroke=\"#888\"/>\n";
  out << "<rect x=\"420\" y=\"20\" width=\"360\" height=\"360\" fill=\"none\" "
         "stroke=\"#888\"/>\n";

  const std::size_t entities = trace.rows.front().positions.size();
  for (std::size_t e = 0; e < entities; ++e) {
    const char* color = e + 1 == entities ? "#222222"
                                          : kPalette[e % 4];
    out << "<polyline fill=\"none\" stroke=\"" << color
        << "\" stroke-width=\"1.5\" points=\"";
    for (const CreditTraceRow& row : trace.rows) {
      out << world.x(row.positions[e][0]) << ',' << world.y(row.positions[e][1])
          << ' ';
    }
    out << "\"/>\n";
    const std::array<double, 2>& last = trace.rows.back().positions[e];
    out << "<circle cx=\"" << world.x(last[0]) << "\" cy=\"" << world.y(last[1])
        << "\" r=\"4\" fill=\"" << color << "\"/>\n";
  }

  for (int i = 0; i < trace.n_agents; ++i) {
    out << "<polyline fill=\"none\" stroke=\"" << kPalette[i % 4]
        << "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t r = 0; r < trace.rows.size(); ++r) {
      const std::size_t flat =
          r * static_cast<std::size_t>(trace.n_agents) + static_cast<std::size_t>(i);
      out << chart.x(static_cast<double>(r)) << ','
          << chart.y(trace.normalized[flat]) << ' ';
    }
    out << "\"/>\n";
  }
  out << "<text x=\"24\" y=\"16\" font-size=\"12\">positions</text>\n";
  out << "<text x=\"424\" y=\"16\" font-size=\"12\">normalized credit</text>\n";
  out << "</svg>\n";
}

}  // namespace sqmarl::harness
