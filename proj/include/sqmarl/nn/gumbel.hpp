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

#ifndef SQMARL_NN_GUMBEL_HPP
#define SQMARL_NN_GUMBEL_HPP

#include <span>
#include <vector>

#include "sqmarl/rng.hpp"

namespace sqmarl::nn {

std::vector<double> softmax(std::span<const double> logits);

// Given y = softmax(z) and dL/dy, returns dL/dz.
std::vector<double> softmax_backward(std::span<const double> y,
                                     std::span<const double> upstream);

std::vector<double> sample_gumbel_noise(std::size_t size, Rng& rng);

// softmax((logits + noise) / temperature); pure, noise supplied by caller so
// gradients and finite differences can replay the same draw.
std::vector<double> relaxed_categorical(std::span<const double> logits,
                                        std::span<const double> noise,
                                        double temperature);

// Draws fresh Gumbel noise; entries positive, summing to one.
std::vector<double> gumbel_softmax_sample(std::span<const double> logits,
                                          double temperature, Rng& rng);

// Pathwise derivative of the relaxed sample: dL/dlogits from the sampled
// probabilities y and dL/dy.
std::vector<double> gumbel_softmax_backward(std::span<const double> y,
                                            double temperature,
                                            std::span<const double> upstream);

std::size_t argmax(std::span<const double> values);

// One-hot with the 1 at the first maximal index.
std::vector<double> onehot_argmax(std::span<const double> values);

std::vector<double> onehot(std::size_t index, std::size_t size);

}  // namespace sqmarl::nn

#endif  // SQMARL_NN_GUMBEL_HPP
