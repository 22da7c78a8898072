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

#include "ibtom/rng.hpp"

#include <bit>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "ibtom/errors.hpp"

namespace ibtom {
namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;
constexpr std::uint64_t kChildSalt = 0xD1B54A32D192ED03ULL;

constexpr std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

constexpr std::uint64_t root_key(std::uint64_t seed) { return mix64(seed + kGolden); }

constexpr std::uint64_t child_key(std::uint64_t key, std::uint64_t id) {
  return mix64(key ^ mix64(id * kGolden + kChildSalt));
}

}  // namespace

RngStream::RngStream(std::uint64_t master_seed, std::uint64_t stream_id)
    : state_{child_key(root_key(master_seed), stream_id), 0} {}

std::uint64_t RngStream::next_u64() {
  const std::uint64_t i = ++state_.counter;
  return mix64(mix64(state_.key + i * kGolden) ^ std::rotl(state_.key, 29));
}

RngStream RngStream::derive(std::uint64_t child_id) const {
  return RngStream(State{child_key(state_.key, child_id), 0});
}

std::string RngStream::serialize() const {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%016llx:%016llx",
                static_cast<unsigned long long>(state_.key),
                static_cast<unsigned long long>(state_.counter));
  return buf;
}

RngStream RngStream::deserialize(const std::string& text) {
  unsigned long long key = 0;
  unsigned long long counter = 0;
  if (text.size() != 33 || std::sscanf(text.c_str(), "%16llx:%16llx", &key, &counter) != 2) {
    throw InputError("malformed stream state: '" + text + "'");
  }
  return RngStream(State{key, counter});
}

RngStream split_stream(std::uint64_t master_seed, std::uint64_t stream_id) {
  return RngStream(master_seed, stream_id);
}

double sample_uniform01(RngStream& stream) {
  // 53-bit grid; the largest value is 1 - 2^-53 so only 0 needs rejecting.
  for (;;) {
    const double u = static_cast<double>(stream.next_u64() >> 11) * 0x1.0p-53;
    if (u > 0.0) return u;
  }
}

std::size_t sample_index(RngStream& stream, std::size_t n) {
  if (n == 0) throw InputError("sample_index: empty range");
  const auto idx = static_cast<std::size_t>(sample_uniform01(stream) * static_cast<double>(n));
  return idx < n ? idx : n - 1;
}

double sample_standard_normal(RngStream& stream) {
  const double u1 = sample_uniform01(stream);
  const double u2 = sample_uniform01(stream);
  return std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * std::numbers::pi * u2);
}

double sample_gamma(RngStream& stream, double shape) {
  if (!(shape > 0.0) || !std::isfinite(shape)) {
    throw ParameterError("gamma shape must be positive, got " + std::to_string(shape));
  }
  if (shape < 1.0) {
    // Gamma(a) = Gamma(a + 1) * U^(1/a)
    const double g = sample_gamma(stream, shape + 1.0);
    return g * std::pow(sample_uniform01(stream), 1.0 / shape);
  }
  // Marsaglia & Tsang (2000).
  const double d = shape - 1.0 / 3.0;
  const double c = 1.0 / std::sqrt(9.0 * d);
  for (;;) {
    double x = 0.0;
    double v = 0.0;
    do {
      x = sample_standard_normal(stream);
      v = 1.0 + c * x;
    } while (v <= 0.0);
    v = v * v * v;
    const double u = sample_uniform01(stream);
    const double x2 = x * x;
    if (u < 1.0 - 0.0331 * x2 * x2) return d * v;
    if (std::log(u) < 0.5 * x2 + d * (1.0 - v + std::log(v))) return d * v;
  }
}

double sample_beta(RngStream& stream, double a, double b) {
  if (!(a > 0.0) || !(b > 0.0)) {
    throw ParameterError("beta parameters must be positive");
  }
  for (;;) {
    const double x = sample_gamma(stream, a);
    const double y = sample_gamma(stream, b);
    const double s = x + y;
    if (s <= 0.0) continue;
    const double r = x / s;
    if (r > 0.0 && r < 1.0) return r;
  }
}

std::vector<double> sample_dirichlet(RngStream& stream, std::span<const double> alpha,
                                     double scale) {
  if (alpha.empty()) throw ParameterError("dirichlet needs at least one component");
  for (double a : alpha) {
    if (!(a > 0.0)) throw ParameterError("dirichlet alpha components must be positive");
  }
  std::vector<double> out(alpha.size());
  for (;;) {
    double total = 0.0;
    for (std::size_t i = 0; i < alpha.size(); ++i) {
      out[i] = sample_gamma(stream, alpha[i]);
      total += out[i];
    }
    if (!(total > 0.0)) continue;
    // Last component takes the remainder so the sum reproduces `scale`.
    double partial = 0.0;
    bool positive = true;
    for (std::size_t i = 0; i + 1 < out.size(); ++i) {
      out[i] = out[i] / total * scale;
      partial += out[i];
      positive = positive && out[i] > 0.0;
    }
    out.back() = scale - partial;
    positive = positive && out.back() > 0.0;
    if (positive || scale <= 0.0) return out;
  }
}

std::pair<double, double> sample_asset_values(RngStream& stream, std::pair<double, double> alpha,
                                              double scale) {
  const double a[2] = {alpha.first, alpha.second};
  const auto v = sample_dirichlet(stream, a, scale);
  return {v[0], v[1]};
}

double sample_activation_noise(RngStream& stream, double sigma) {
  if (sigma < 0.0) throw ParameterError("noise sigma must be nonnegative");
  if (sigma == 0.0) return 0.0;
  const double xi = sample_uniform01(stream);
  return sigma * std::log((1.0 - xi) / xi);
}

}  // namespace ibtom
