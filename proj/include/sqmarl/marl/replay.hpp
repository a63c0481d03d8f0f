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

#ifndef SQMARL_MARL_REPLAY_HPP
#define SQMARL_MARL_REPLAY_HPP

#include <stdexcept>
#include <vector>

#include "sqmarl/rng.hpp"

namespace sqmarl::marl {

/// One stored step: global state, the executed one-hot action of every
/// agent, the shared reward, the successor state and the terminal flag.
struct Transition {
  std::vector<double> state;
  std::vector<std::vector<double>> actions;
  double reward = 0.0;
  std::vector<double> next_state;
  bool done = false;
};

/// Fixed-capacity ring of transitions with uniform with-replacement sampling.
class ReplayBuffer {
 public:
  explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {
    if (capacity == 0) throw std::invalid_argument("ReplayBuffer: zero capacity");
    ring_.reserve(capacity);
  }

  void push(Transition t) {
    if (ring_.size() < capacity_) {
      ring_.push_back(std::move(t));
    } else {
      ring_[next_] = std::move(t);  // evict the oldest
    }
    next_ = (next_ + 1) % capacity_;
  }

  std::size_t size() const { return ring_.size(); }
  std::size_t capacity() const { return capacity_; }

  std::vector<const Transition*> sample(std::size_t batch, Rng& rng) const {
    if (batch == 0 || batch > ring_.size()) {
      throw std::invalid_argument(
          "ReplayBuffer::sample: batch of " + std::to_string(batch) +
          " from " + std::to_string(ring_.size()) + " stored transitions");
    }
    std::vector<const Transition*> out(batch);
    for (std::size_t k = 0; k < batch; ++k) {
      out[k] = &ring_[static_cast<std::size_t>(
          rng.uniform_int(static_cast<int>(ring_.size())))];
    }
    return out;
  }

 private:
  std::size_t capacity_;
  std::size_t next_ = 0;
  std::vector<Transition> ring_;
};

}  // namespace sqmarl::marl

#endif  // SQMARL_MARL_REPLAY_HPP
