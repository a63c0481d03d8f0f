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

#include "sqmarl/nn/adam.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sqmarl::nn {

namespace {

constexpr double kClip = 1.0;  // entrywise gradient clip before the update

void update_block(std::vector<double>& params, const std::vector<double>& grads,
                  std::vector<double>& m, std::vector<double>& v,
                  const AdamState& state, double bias1, double bias2,
                  const char* name) {
  if (grads.size() != params.size()) {
    throw std::invalid_argument(std::string("adam_step: gradient block ") +
                                name + " has wrong shape");
  }
  for (std::size_t k = 0; k < params.size(); ++k) {
    double g = grads[k];
    if (!std::isfinite(g)) {
      throw std::runtime_error(std::string("adam_step: non-finite gradient in ") +
                               name);
    }
    if (g > kClip) g = kClip;
    if (g < -kClip) g = -kClip;
    m[k] = state.beta1 * m[k] + (1.0 - state.beta1) * g;
    v[k] = state.beta2 * v[k] + (1.0 - state.beta2) * g * g;
    const double m_hat = m[k] / bias1;
    const double v_hat = v[k] / bias2;
    params[k] -= state.lr * m_hat / (std::sqrt(v_hat) + state.eps);
  }
}

}  // namespace

AdamState make_adam(const Mlp& net, double lr) {
  if (lr <= 0.0) throw std::invalid_argument("make_adam: learning rate must be positive");
  AdamState state;
  state.lr = lr;
  state.m = zero_grads(net);
  state.v = zero_grads(net);
  return state;
}

void adam_step(Mlp& net, const MlpGrads& grads, AdamState& state) {
  state.step_count += 1;
  const double bias1 = 1.0 - std::pow(state.beta1, state.step_count);
  const double bias2 = 1.0 - std::pow(state.beta2, state.step_count);
  update_block(net.w1, grads.w1, state.m.w1, state.v.w1, state, bias1, bias2, "w1");
  update_block(net.b1, grads.b1, state.m.b1, state.v.b1, state, bias1, bias2, "b1");
  update_block(net.w2, grads.w2, state.m.w2, state.v.w2, state, bias1, bias2, "w2");
  update_block(net.b2, grads.b2, state.m.b2, state.v.b2, state, bias1, bias2, "b2");
}

void soft_update(Mlp& target, const Mlp& source, double tau) {
  if (tau < 0.0 || tau > 1.0) {
    throw std::invalid_argument("soft_update: tau must lie in [0, 1]");
  }
  if (target.parameter_count() != source.parameter_count() ||
      target.in_dim != source.in_dim || target.out_dim != source.out_dim) {
    throw std::invalid_argument("soft_update: shape mismatch");
  }
  auto blend = [tau](std::vector<double>& t, const std::vector<double>& s) {
    for (std::size_t k = 0; k < t.size(); ++k) {
      t[k] = tau * s[k] + (1.0 - tau) * t[k];
    }
  };
  blend(target.w1, source.w1);
  blend(target.b1, source.b1);
  blend(target.w2, source.w2);
  blend(target.b2, source.b2);
}

}  // namespace sqmarl::nn
