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

#include "ibtom/game.hpp"

#include <numeric>
#include <string>

#include "ibtom/errors.hpp"

namespace ibtom {

std::string_view to_string(Role r) { return r == Role::kDefender ? "defender" : "attacker"; }

Role role_from_string(std::string_view name) {
  if (name == "defender") return Role::kDefender;
  if (name == "attacker") return Role::kAttacker;
  throw InputError("unknown role '" + std::string(name) + "'");
}

AssetValues::AssetValues(std::vector<double> values) : values_(std::move(values)) {
  if (values_.empty()) throw InputError("asset values must be nonempty");
  for (double v : values_) {
    if (!(v > 0.0)) throw InputError("asset values must be strictly positive");
  }
}

double AssetValues::operator[](AssetId id) const {
  if (id >= values_.size()) {
    throw InputError("asset id " + std::to_string(id) + " out of range");
  }
  return values_[id];
}

double AssetValues::total() const { return std::accumulate(values_.begin(), values_.end(), 0.0); }

Payoffs resolve(const AssetValues& values, JointAction action) {
  if (action.defender >= values.size() || action.attacker >= values.size()) {
    throw InputError("asset id out of range in joint action");
  }
  if (action.defender == action.attacker) return {0.0, 0.0};
  const double v = values[action.attacker];
  return {-v, v};
}

AssetValues new_episode(RngStream& stream, const AssetPrior& prior) {
  return AssetValues(sample_dirichlet(stream, prior.alpha, prior.scale));
}

}  // namespace ibtom
