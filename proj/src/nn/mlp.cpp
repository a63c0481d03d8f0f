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

#include "sqmarl/nn/mlp.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace sqmarl::nn {

namespace {

void check_dims(int in_dim, int hidden_dim, int out_dim) {
  if (in_dim < 1 || hidden_dim < 1 || out_dim < 1) {
    throw std::invalid_argument("Mlp: all dimensions must be positive");
  }
}

}  // namespace

Mlp make_mlp(int in_dim, int hidden_dim, int out_dim, Rng& rng) {
  check_dims(in_dim, hidden_dim, out_dim);
  Mlp net;
  net.in_dim = in_dim;
  net.hidden_dim = hidden_dim;
  net.out_dim = out_dim;
  const double bound1 = 1.0 / std::sqrt(static_cast<double>(in_dim));
  const double bound2 = 1.0 / std::sqrt(static_cast<double>(hidden_dim));
  net.w1.resize(static_cast<std::size_t>(hidden_dim) * in_dim);
  net.b1.assign(static_cast<std::size_t>(hidden_dim), 0.0);
  net.w2.resize(static_cast<std::size_t>(out_dim) * hidden_dim);
  net.b2.assign(static_cast<std::size_t>(out_dim), 0.0);
  for (double& w : net.w1) w = rng.uniform(-bound1, bound1);
  for (double& w : net.w2) w = rng.uniform(-bound2, bound2);
  return net;
}

Mlp zero_mlp(int in_dim, int hidden_dim, int out_dim) {
  check_dims(in_dim, hidden_dim, out_dim);
  Mlp net;
  net.in_dim = in_dim;
  net.hidden_dim = hidden_dim;
  net.out_dim = out_dim;
  net.w1.assign(static_cast<std::size_t>(hidden_dim) * in_dim, 0.0);
  net.b1.assign(static_cast<std::size_t>(hidden_dim), 0.0);
  net.w2.assign(static_cast<std::size_t>(out_dim) * hidden_dim, 0.0);
  net.b2.assign(static_cast<std::size_t>(out_dim), 0.0);
  return net;
}

std::vector<double> mlp_forward(const Mlp& net, std::span<const double> x,
                                MlpCache* cache) {
  if (x.size() != static_cast<std::size_t>(net.in_dim)) {
    throw std::invalid_argument("mlp_forward: input has " +
                                std::to_string(x.size()) + " entries, net expects " +
                                std::to_string(net.in_dim));
  }
  const std::size_t in = static_cast<std::size_t>(net.in_dim);
  const std::size_t hidden = static_cast<std::size_t>(net.hidden_dim);
  const std::size_t out = static_cast<std::size_t>(net.out_dim);

  std::vector<double> pre(hidden);
  std::vector<double> act(hidden);
  for (std::size_t h = 0; h < hidden; ++h) {
    double sum = net.b1[h];
    const double* row = net.w1.data() + h * in;
    for (std::size_t i = 0; i < in; ++i) sum += row[i] * x[i];
    pre[h] = sum;
    act[h] = sum > 0.0 ? sum : 0.0;
  }
  std::vector<double> y(out);
  for (std::size_t o = 0; o < out; ++o) {
    double sum = net.b2[o];
    const double* row = net.w2.data() + o * hidden;
    for (std::size_t h = 0; h < hidden; ++h) sum += row[h] * act[h];
    y[o] = sum;
  }
  if (cache != nullptr) {
    cache->input.assign(x.begin(), x.end());
    cache->pre_hidden = std::move(pre);
    cache->hidden = std::move(act);
  }
  return y;
}

MlpGrads zero_grads(const Mlp& net) {
  MlpGrads g;
  g.w1.assign(net.w1.size(), 0.0);
  g.b1.assign(net.b1.size(), 0.0);
  g.w2.assign(net.w2.size(), 0.0);
  g.b2.assign(net.b2.size(), 0.0);
  return g;
}

std::vector<double> mlp_backward(const Mlp& net, const MlpCache& cache,
                                 std::span<const double> upstream,
                                 MlpGrads& grads) {
  const std::size_t in = static_cast<std::size_t>(net.in_dim);
  const std::size_t hidden = static_cast<std::size_t>(net.hidden_dim);
  const std::size_t out = static_cast<std::size_t>(net.out_dim);
  if (upstream.size() != out || cache.input.size() != in ||
      cache.hidden.size() != hidden || grads.w1.size() != net.w1.size() ||
      grads.w2.size() != net.w2.size()) {
    throw std::invalid_argument("mlp_backward: shape mismatch");
  }

  // Output layer.
  std::vector<double> d_hidden(hidden, 0.0);
  for (std::size_t o = 0; o < out; ++o) {
    const double u = upstream[o];
    grads.b2[o] += u;
    double* wrow = grads.w2.data() + o * hidden;
    const double* w2row = net.w2.data() + o * hidden;
    for (std::size_t h = 0; h < hidden; ++h) {
      wrow[h] += u * cache.hidden[h];
      d_hidden[h] += u * w2row[h];
    }
  }
  // Rectifier gate, then input layer.
  std::vector<double> d_input(in, 0.0);
  for (std::size_t h = 0; h < hidden; ++h) {
    if (cache.pre_hidden[h] <= 0.0) continue;
    const double dz = d_hidden[h];
    grads.b1[h] += dz;
    double* wrow = grads.w1.data() + h * in;
    const double* w1row = net.w1.data() + h * in;
    for (std::size_t i = 0; i < in; ++i) {
      wrow[i] += dz * cache.input[i];
      d_input[i] += dz * w1row[i];
    }
  }
  return d_input;
}

double l2_norm(const MlpGrads& grads) {
  double sum = 0.0;
  for (const std::vector<double>* block : {&grads.w1, &grads.b1, &grads.w2, &grads.b2}) {
    for (double g : *block) sum += g * g;
  }
  return std::sqrt(sum);
}

}  // namespace sqmarl::nn
