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

#ifndef SQMARL_NN_ADAM_HPP
#define SQMARL_NN_ADAM_HPP

#include "sqmarl/nn/mlp.hpp"

namespace sqmarl::nn {

/// Adam accumulator state for one network. Default moment decays and epsilon;
/// only the learning rate varies per use.
struct AdamState {
  double lr = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double eps = 1e-8;
  long step_count = 0;
  MlpGrads m;  // first moments
  MlpGrads v;  // second moments, entrywise >= 0
};

AdamState make_adam(const Mlp& net, double lr);

// Gradients are clipped entrywise to +/-1 before the bias-corrected update.
// Throws on non-finite gradients, naming the offending block.
void adam_step(Mlp& net, const MlpGrads& grads, AdamState& state);

// target <- tau * source + (1 - tau) * target, entrywise. tau in [0, 1].
void soft_update(Mlp& target, const Mlp& source, double tau);

}  // namespace sqmarl::nn

#endif  // SQMARL_NN_ADAM_HPP
