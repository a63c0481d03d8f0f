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

#include "sqmarl/nn/gumbel.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sqmarl::nn {

std::vector<double> softmax(std::span<const double> logits) {
  if (logits.empty()) throw std::invalid_argument("softmax: empty input");
  const double peak = *std::max_element(logits.begin(), logits.end());
  std::vector<double> out(logits.size());
  double total = 0.0;
  for (std::size_t k = 0; k < logits.size(); ++k) {
    out[k] = std::exp(logits[k] - peak);
    total += out[k];
  }
  for (double& p : out) p /= total;
  return out;
}

std::vector<double> softmax_backward(std::span<const double> y,
                                     std::span<const double> upstream) {
  if (y.size() != upstream.size()) {
    throw std::invalid_argument("softmax_backward: shape mismatch");
  }
  double dot = 0.0;
  for (std::size_t k = 0; k < y.size(); ++k) dot += upstream[k] * y[k];
  std::vector<double> out(y.size());
  for (std::size_t k = 0; k < y.size(); ++k) out[k] = y[k] * (upstream[k] - dot);
  return out;
}

std::vector<double> sample_gumbel_noise(std::size_t size, Rng& rng) {
  std::vector<double> noise(size);
  for (double& g : noise) g = rng.gumbel();
  return noise;
}

std::vector<double> relaxed_categorical(std::span<const double> logits,
                                        std::span<const double> noise,
                                        double temperature) {
  if (temperature <= 0.0) {
    throw std::invalid_argument("relaxed_categorical: temperature must be positive");
  }
  if (logits.size() != noise.size()) {
    throw std::invalid_argument("relaxed_categorical: noise shape mismatch");
  }
  std::vector<double> perturbed(logits.size());
  for (std::size_t k = 0; k < logits.size(); ++k) {
    perturbed[k] = (logits[k] + noise[k]) / temperature;
  }
  return softmax(perturbed);
}

std::vector<double> gumbel_softmax_sample(std::span<const double> logits,
                                          double temperature, Rng& rng) {
  return relaxed_categorical(logits, sample_gumbel_noise(logits.size(), rng),
                             temperature);
}

std::vector<double> gumbel_softmax_backward(std::span<const double> y,
                                            double temperature,
                                            std::span<const double> upstream) {
  if (temperature <= 0.0) {
    throw std::invalid_argument("gumbel_softmax_backward: temperature must be positive");
  }
  std::vector<double> dz = softmax_backward(y, upstream);
  for (double& g : dz) g /= temperature;
  return dz;
}

std::size_t argmax(std::span<const double> values) {
  if (values.empty()) throw std::invalid_argument("argmax: empty input");
  std::size_t best = 0;
  for (std::size_t k = 1; k < values.size(); ++k) {
    if (values[k] > values[best]) best = k;
  }
  return best;
}

std::vector<double> onehot(std::size_t index, std::size_t size) {
  std::vector<double> out(size, 0.0);
  out.at(index) = 1.0;
  return out;
}

std::vector<double> onehot_argmax(std::span<const double> values) {
  return onehot(argmax(values), values.size());
}

}  // namespace sqmarl::nn
