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

#ifndef SQMARL_HARNESS_TRAIN_HPP
#define SQMARL_HARNESS_TRAIN_HPP

#include <string>
#include <vector>

#include "sqmarl/harness/bundle.hpp"
#include "sqmarl/harness/config.hpp"
#include "sqmarl/harness/metrics.hpp"
#include "sqmarl/marl/nets.hpp"

namespace sqmarl::harness {

struct TrainOutput {
  std::vector<MetricsRecord> metrics;
  std::string metrics_path;     // metrics.csv inside out_dir
  std::string checkpoint_dir;   // final checkpoint bundle
  double wall_seconds = 0.0;    // reported on the log, never in the CSV
};

/// Runs the full training loop for one configuration: reset/step/store,
/// behaviour updates on the configured cadence, soft target updates, one
/// metrics row per episode, periodic and final checkpoints. Fully
/// deterministic for a given (config, seed); aborts with a diagnostic on a
/// non-finite loss. `log` may be null for silence.
TrainOutput run_training(const TrainConfig& config, const std::string& out_dir,
                         std::ostream* log = nullptr);

/// Same loop without any filesystem output; used by tests and the
/// acceptance suite when only the metrics and final team matter.
struct TrainedTeam {
  marl::Team team;
  std::vector<MetricsRecord> metrics;
};
TrainedTeam train_in_memory(const TrainConfig& config, std::ostream* log = nullptr);

}  // namespace sqmarl::harness

#endif  // SQMARL_HARNESS_TRAIN_HPP
