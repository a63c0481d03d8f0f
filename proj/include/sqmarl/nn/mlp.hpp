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

#ifndef SQMARL_NN_MLP_HPP
#define SQMARL_NN_MLP_HPP

#include <span>
#include <vector>

#include "sqmarl/rng.hpp"

namespace sqmarl::nn {

/// One-hidden-layer perceptron with rectifier hidden units:
/// y = w2 * relu(w1 * x + b1) + b2.
struct Mlp {
  int in_dim = 0;
  int hidden_dim = 0;
  int out_dim = 0;
  std::vector<double> w1;  // hidden_dim x in_dim, row-major
  std::vector<double> b1;  // hidden_dim
  std::vector<double> w2;  // out_dim x hidden_dim
  std::vector<double> b2;  // out_dim

  std::size_t parameter_count() const {
    return w1.size() + b1.size() + w2.size() + b2.size();
  }
};

// Weights uniform on +/- 1/sqrt(fan_in), biases zero.
Mlp make_mlp(int in_dim, int hidden_dim, int out_dim, Rng& rng);

// Shape-consistent zero-valued network (useful for constant critics).
Mlp zero_mlp(int in_dim, int hidden_dim, int out_dim);

/// Activations retained by a forward pass for the matching backward pass.
struct MlpCache {
  std::vector<double> input;
  std::vector<double> pre_hidden;
  std::vector<double> hidden;
};

std::vector<double> mlp_forward(const Mlp& net, std::span<const double> x,
                                MlpCache* cache = nullptr);

/// Parameter gradients, shaped like the network they came from.
struct MlpGrads {
  std::vector<double> w1, b1, w2, b2;
};

MlpGrads zero_grads(const Mlp& net);

/// Accumulates d(upstream . y)/d(params) into `grads` and returns
/// d(upstream . y)/dx. `cache` must come from a forward pass of `net`.
std::vector<double> mlp_backward(const Mlp& net, const MlpCache& cache,
                                 std::span<const double> upstream,
                                 MlpGrads& grads);

double l2_norm(const MlpGrads& grads);

}  // namespace sqmarl::nn

#endif  // SQMARL_NN_MLP_HPP
