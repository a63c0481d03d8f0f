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

#ifndef SQMARL_ENV_TRAJECTORY_HPP
#define SQMARL_ENV_TRAJECTORY_HPP

#include <iosfwd>

namespace sqmarl::env {

// Line-oriented trajectory dump for replay and analysis: one record
// "episode step agent action reward done" per agent per step.
class TrajectoryWriter {
 public:
  explicit TrajectoryWriter(std::ostream& out) : out_(out) {}
  void record(long episode, long step, int agent, int action, double reward,
              bool done);

 private:
  std::ostream& out_;
};

}  // namespace sqmarl::env

#endif  // SQMARL_ENV_TRAJECTORY_HPP
