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

#include "sqmarl/env/trajectory.hpp"

#include <cstdio>
#include <ostream>

namespace sqmarl::env {

void TrajectoryWriter::record(long episode, long step, int agent, int action,
                              double reward, bool done) {
  char line[128];
  std::snprintf(line, sizeof line, "%ld %ld %d %d %.10g %d\n", episode, step,
                agent, action, reward, done ? 1 : 0);
  out_ << line;
}

}  // namespace sqmarl::env
