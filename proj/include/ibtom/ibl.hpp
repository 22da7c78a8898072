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

#ifndef IBTOM_IBL_HPP_
#define IBTOM_IBL_HPP_

#include <compare>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ibtom/game.hpp"
#include "ibtom/rng.hpp"

namespace ibtom {

// An option: own action, optionally conditioned on an opponent action.
struct OptionKey {
  AssetId action = 0;
  std::optional<AssetId> context;

  auto operator<=>(const OptionKey&) const = default;
  bool operator==(const OptionKey&) const = default;
};

std::string to_string(const OptionKey& key);

// One consolidated memory trace. `occurrences` is strictly increasing.
struct Instance {
  OptionKey key;
  double outcome = 0.0;
  std::vector<Trial> occurrences;
  bool prepopulated = false;
};

struct IBLParams {
  double decay = 0.5;
  double noise = 0.25;
  // Retrieval temperature. Unset means noise * sqrt(2).
  std::optional<double> temperature;
  // Choice inverse temperature, applied as exp(beta * V).
  double beta = 0.05;
  double default_outcome = 0.0;

  double tau() const;
  // Throws ParameterError naming the bad field.
  void validate() const;
};

class InstanceStore {
 public:
  // Seeds `key` at time 0. Repeated calls for the same (key, outcome) are no-ops.
  void prepopulate(const OptionKey& key, double outcome);

  // Appends `time` to the matching (key, outcome) trace or creates a new one.
  // Throws ContractViolation when time precedes the store clock or repeats
  // the trace's last occurrence.
  void record(const OptionKey& key, double outcome, Trial time);

  const std::vector<Instance>& instances() const { return instances_; }
  Trial clock() const { return clock_; }
  bool empty() const { return instances_.empty(); }

  std::vector<std::size_t> indices_for(const OptionKey& key) const;
  bool contains(const OptionKey& key) const;

  // Drops the context of every key and consolidates by (action, outcome);
  // occurrence lists are merged as sets.
  InstanceStore project_to_actions() const;

  // Deterministic listing sorted by (key, outcome), one instance per line.
  std::string dump() const;

  void clear();

 private:
  std::vector<Instance> instances_;
  Trial clock_ = 0;
};

// ln(sum (now - t')^-d) without noise. Throws ContractViolation on an empty
// list or any t' >= now.
double base_activation(std::span<const Trial> occurrences, Trial now, double decay);

// Base activation plus a fresh logistic noise draw.
double activation(const Instance& instance, Trial now, const IBLParams& params,
                  RngStream& stream);

struct Retrieval {
  std::size_t index;  // into store.instances()
  double probability;
};

// Boltzmann retrieval over the instances sharing `key`. Noise is drawn once
// per instance per call, in store order. Throws LookupError if `key` is absent.
std::vector<Retrieval> retrieval_probs(const InstanceStore& store, const OptionKey& key,
                                       Trial now, const IBLParams& params, RngStream& stream);

double blended_value(const InstanceStore& store, const OptionKey& key, Trial now,
                     const IBLParams& params, RngStream& stream);

// P(i) proportional to exp(beta * values[i]), with max-shift.
std::vector<double> softmax_probs(std::span<const double> values, double beta);

// Samples an index from softmax_probs. Throws InputError for an empty or
// non-finite input.
std::size_t softmax_choose(std::span<const double> values, double beta, RngStream& stream);

OptionKey softmax_choose(std::span<const std::pair<OptionKey, double>> options, double beta,
                         RngStream& stream);

}  // namespace ibtom

#endif  // IBTOM_IBL_HPP_
