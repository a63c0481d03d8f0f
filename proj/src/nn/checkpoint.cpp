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

#include "sqmarl/nn/checkpoint.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <stdexcept>

namespace sqmarl::nn {

namespace {

constexpr std::uint32_t kMagic = 0x4E4E5153;  // "SQNN" little-endian
constexpr std::uint32_t kVersion = 1;

void put_u32(std::ostream& out, std::uint32_t value) {
  unsigned char bytes[4];
  for (int k = 0; k < 4; ++k) bytes[k] = static_cast<unsigned char>(value >> (8 * k));
  out.write(reinterpret_cast<const char*>(bytes), 4);
}

std::uint32_t get_u32(std::istream& in) {
  unsigned char bytes[4];
  in.read(reinterpret_cast<char*>(bytes), 4);
  if (!in) throw std::runtime_error("read_mlp: truncated header");
  std::uint32_t value = 0;
  for (int k = 0; k < 4; ++k) value |= static_cast<std::uint32_t>(bytes[k]) << (8 * k);
  return value;
}

void put_doubles(std::ostream& out, const std::vector<double>& xs) {
  for (double x : xs) {
    std::uint64_t bits;
    std::memcpy(&bits, &x, sizeof bits);
    unsigned char bytes[8];
    for (int k = 0; k < 8; ++k) bytes[k] = static_cast<unsigned char>(bits >> (8 * k));
    out.write(reinterpret_cast<const char*>(bytes), 8);
  }
}

void get_doubles(std::istream& in, std::vector<double>& xs) {
  for (double& x : xs) {
    unsigned char bytes[8];
    in.read(reinterpret_cast<char*>(bytes), 8);
    if (!in) throw std::runtime_error("read_mlp: truncated payload");
    std::uint64_t bits = 0;
    for (int k = 0; k < 8; ++k) bits |= static_cast<std::uint64_t>(bytes[k]) << (8 * k);
    std::memcpy(&x, &bits, sizeof x);
  }
}

}  // namespace

void write_mlp(std::ostream& out, const Mlp& net) {
  put_u32(out, kMagic);
  put_u32(out, kVersion);
  put_u32(out, static_cast<std::uint32_t>(net.in_dim));
  put_u32(out, static_cast<std::uint32_t>(net.hidden_dim));
  put_u32(out, static_cast<std::uint32_t>(net.out_dim));
  put_doubles(out, net.w1);
  put_doubles(out, net.b1);
  put_doubles(out, net.w2);
  put_doubles(out, net.b2);
}

Mlp read_mlp(std::istream& in) {
  if (get_u32(in) != kMagic) throw std::runtime_error("read_mlp: bad magic");
  if (get_u32(in) != kVersion) throw std::runtime_error("read_mlp: unsupported version");
  Mlp net;
  net.in_dim = static_cast<int>(get_u32(in));
  net.hidden_dim = static_cast<int>(get_u32(in));
  net.out_dim = static_cast<int>(get_u32(in));
  if (net.in_dim < 1 || net.hidden_dim < 1 || net.out_dim < 1 ||
      net.in_dim > 1 << 20 || net.hidden_dim > 1 << 20 || net.out_dim > 1 << 20) {
    throw std::runtime_error("read_mlp: implausible dimensions");
  }
  net.w1.resize(static_cast<std::size_t>(net.hidden_dim) * net.in_dim);
  net.b1.resize(static_cast<std::size_t>(net.hidden_dim));
  net.w2.resize(static_cast<std::size_t>(net.out_dim) * net.hidden_dim);
  net.b2.resize(static_cast<std::size_t>(net.out_dim));
  get_doubles(in, net.w1);
  get_doubles(in, net.b1);
  get_doubles(in, net.w2);
  get_doubles(in, net.b2);
  return net;
}

void save_mlp(const std::string& path, const Mlp& net) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("save_mlp: cannot open " + path);
  write_mlp(out, net);
  if (!out) throw std::runtime_error("save_mlp: write failed for " + path);
}

Mlp load_mlp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("load_mlp: cannot open " + path);
  return read_mlp(in);
}

}  // namespace sqmarl::nn
