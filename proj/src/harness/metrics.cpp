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

#include "sqmarl/harness/metrics.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace sqmarl::harness {

const char* const kMetricsHeader =
    "episode,steps,mean_step_reward,episode_return,turns_to_capture,success";

void write_metrics_csv(std::ostream& out,
                       const std::vector<MetricsRecord>& records) {
  out << kMetricsHeader << '\n';
  char line[192];
  for (const MetricsRecord& r : records) {
    std::snprintf(line, sizeof line, "%ld,%ld,%.10g,%.10g,%ld,%d\n", r.episode,
                  r.steps, r.mean_step_reward, r.episode_return,
                  r.turns_to_capture, r.success);
    out << line;
  }
}

void write_metrics_csv(const std::string& path,
                       const std::vector<MetricsRecord>& records) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("write_metrics_csv: cannot open " + path);
  write_metrics_csv(out, records);
}

std::vector<MetricsRecord> read_metrics_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("read_metrics_csv: cannot open " + path);
  std::string line;
  if (!std::getline(in, line) || line != kMetricsHeader) {
    throw std::runtime_error("read_metrics_csv: bad header in " + path);
  }
  std::vector<MetricsRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    MetricsRecord r;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream fields(line);
    if (!(fields >> r.episode >> r.steps >> r.mean_step_reward >>
          r.episode_return >> r.turns_to_capture >> r.success)) {
      throw std::runtime_error("read_metrics_csv: bad row '" + line + "'");
    }
    records.push_back(r);
  }
  return records;
}

std::vector<double> moving_average(const std::vector<double>& xs,
                                   std::size_t window) {
  if (window == 0) throw std::invalid_argument("moving_average: zero window");
  std::vector<double> out(xs.size(), 0.0);
  double running = 0.0;
  for (std::size_t k = 0; k < xs.size(); ++k) {
    running += xs[k];
    if (k >= window) running -= xs[k - window];
    out[k] = running / static_cast<double>(std::min(k + 1, window));
  }
  return out;
}

}  // namespace sqmarl::harness
