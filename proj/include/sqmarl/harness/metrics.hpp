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

#ifndef SQMARL_HARNESS_METRICS_HPP
#define SQMARL_HARNESS_METRICS_HPP

#include <iosfwd>
#include <string>
#include <vector>

namespace sqmarl::harness {

/// One row per training episode. The file holds only run-derived values so
/// identical (config, seed) pairs produce byte-identical output; wall-clock
/// timing goes to the progress log instead.
struct MetricsRecord {
  long episode = 0;
  long steps = 0;
  double mean_step_reward = 0.0;
  double episode_return = 0.0;
  long turns_to_capture = 0;  // prey: steps to capture, or the episode cap
  int success = 0;            // traffic: no collision; prey: captured
};

extern const char* const kMetricsHeader;

void write_metrics_csv(std::ostream& out, const std::vector<MetricsRecord>& records);
void write_metrics_csv(const std::string& path, const std::vector<MetricsRecord>& records);
std::vector<MetricsRecord> read_metrics_csv(const std::string& path);

// Trailing moving average used for reported learning curves.
std::vector<double> moving_average(const std::vector<double>& xs, std::size_t window);

}  // namespace sqmarl::harness

#endif  // SQMARL_HARNESS_METRICS_HPP
