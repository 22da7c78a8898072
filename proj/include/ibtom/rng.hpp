// Copyright 2026 The ibtom Authors. All rights reserved.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IBTOM_RNG_HPP_
#define IBTOM_RNG_HPP_

#include <cstdint>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace ibtom {

// Counter-based random stream.
//
// A stream is a 64-bit key plus a 64-bit draw counter. Draw i is a pure
// function of (key, i), so a stream can be reconstructed from its state and
// any number of child streams can be derived by index without touching the
// parent. Derivation scheme (stable, documented for re-implementations):
//
//   mix(z)          = SplitMix64 finalizer
//   root(seed)      = mix(seed + 0x9E3779B97F4A7C15)
//   child(key, id)  = mix(key ^ mix(id * 0x9E3779B97F4A7C15 + 0xD1B54A32D192ED03))
//   split_stream(seed, id) = child(root(seed), id)
//   draw(key, i)    = mix(mix(key + (i + 1) * 0x9E3779B97F4A7C15) ^ rotl(key, 29))
class RngStream {
 public:
  struct State {
    std::uint64_t key = 0;
    std::uint64_t counter = 0;
    bool operator==(const State&) const = default;
  };

  RngStream(std::uint64_t master_seed, std::uint64_t stream_id);
  explicit RngStream(State state) : state_(state) {}

  std::uint64_t next_u64();

  // Child stream independent of this stream's position.
  RngStream derive(std::uint64_t child_id) const;

  State state() const { return state_; }
  std::string serialize() const;
  static RngStream deserialize(const std::string& text);

  // UniformRandomBitGenerator surface.
  using result_type = std::uint64_t;
  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return ~result_type{0}; }
  result_type operator()() { return next_u64(); }

 private:
  State state_;
};

RngStream split_stream(std::uint64_t master_seed, std::uint64_t stream_id);

// Strictly inside (0, 1); exact zero is rejected and redrawn.
double sample_uniform01(RngStream& stream);

// Uniform integer in [0, n). n must be positive.
std::size_t sample_index(RngStream& stream, std::size_t n);

double sample_standard_normal(RngStream& stream);

// Gamma(shape, scale = 1). Throws ParameterError for shape <= 0.
double sample_gamma(RngStream& stream, double shape);

// Gamma(a) / (Gamma(a) + Gamma(b)), strictly inside (0, 1).
double sample_beta(RngStream& stream, double a, double b);

// Dirichlet(alpha) scaled so the components sum to `scale`.
std::vector<double> sample_dirichlet(RngStream& stream,
                                     std::span<const double> alpha,
                                     double scale);

std::pair<double, double> sample_asset_values(RngStream& stream,
                                              std::pair<double, double> alpha,
                                              double scale);

// sigma * ln((1 - xi) / xi) with a fresh xi ~ U(0, 1); exactly 0 when sigma == 0.
double sample_activation_noise(RngStream& stream, double sigma);

}  // namespace ibtom

#endif  // IBTOM_RNG_HPP_
