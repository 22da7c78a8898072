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

#ifndef IBTOM_GAME_HPP_
#define IBTOM_GAME_HPP_

#include <cstddef>
#include <string_view>
#include <vector>

#include "ibtom/rng.hpp"

namespace ibtom {

using AssetId = std::size_t;
using Trial = long;

inline constexpr std::size_t kDefaultNumAssets = 2;

enum class Role { kDefender, kAttacker };

constexpr Role other(Role r) { return r == Role::kDefender ? Role::kAttacker : Role::kDefender; }
std::string_view to_string(Role r);
Role role_from_string(std::string_view name);

// Per-episode asset utilities. Immutable once sampled.
class AssetValues {
 public:
  explicit AssetValues(std::vector<double> values);

  std::size_t size() const { return values_.size(); }
  double operator[](AssetId id) const;
  const std::vector<double>& values() const { return values_; }
  double total() const;

 private:
  std::vector<double> values_;
};

struct JointAction {
  AssetId defender = 0;
  AssetId attacker = 0;
};

struct Payoffs {
  double defender = 0.0;
  double attacker = 0.0;
  double for_role(Role r) const { return r == Role::kDefender ? defender : attacker; }
};

// Covered target: both get 0. Uncovered: attacker gains v[target], defender loses it.
Payoffs resolve(const AssetValues& values, JointAction action);

struct AssetPrior {
  std::vector<double> alpha{3.0, 4.0};
  double scale = 100.0;
};

AssetValues new_episode(RngStream& stream, const AssetPrior& prior = {});

}  // namespace ibtom

#endif  // IBTOM_GAME_HPP_
