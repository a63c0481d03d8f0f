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

#ifndef SQMARL_NN_CHECKPOINT_HPP
#define SQMARL_NN_CHECKPOINT_HPP

#include <iosfwd>
#include <string>

#include "sqmarl/nn/mlp.hpp"

namespace sqmarl::nn {

// Parameter blob: a little-endian header (magic, version, dims) followed by
// the flat IEEE-754 double array w1, b1, w2, b2. The loader validates the
// magic and that the payload matches the declared shape.
void write_mlp(std::ostream& out, const Mlp& net);
Mlp read_mlp(std::istream& in);

void save_mlp(const std::string& path, const Mlp& net);
Mlp load_mlp(const std::string& path);

}  // namespace sqmarl::nn

#endif  // SQMARL_NN_CHECKPOINT_HPP
