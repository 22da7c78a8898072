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

#include "ibtom/ibl.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <map>
#include <numbers>
#include <sstream>

#include "ibtom/errors.hpp"

namespace ibtom {

std::string to_string(const OptionKey& key) {
  std::string s = "(" + std::to_string(key.action);
  if (key.context) s += "|" + std::to_string(*key.context);
  return s + ")";
}

double IBLParams::tau() const {
  if (temperature) return *temperature;
  return noise * std::numbers::sqrt2;
}

void IBLParams::validate() const {
  if (!(decay >= 0.0) || !std::isfinite(decay)) {
    throw ParameterError("decay must be a nonnegative finite number");
  }
  if (!(noise >= 0.0) || !std::isfinite(noise)) {
    throw ParameterError("noise must be a nonnegative finite number");
  }
  if (!(beta > 0.0) || !std::isfinite(beta)) {
    throw ParameterError("beta must be a positive finite number");
  }
  if (!std::isfinite(default_outcome)) {
    throw ParameterError("default_outcome must be finite");
  }
  const double t = tau();
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw ParameterError("temperature must be positive; set it explicitly when noise is 0");
  }
}

void InstanceStore::prepopulate(const OptionKey& key, double outcome) {
  for (const auto& inst : instances_) {
    if (inst.key == key && inst.outcome == outcome && inst.prepopulated) return;
  }
  instances_.push_back(Instance{key, outcome, {0}, true});
}

void InstanceStore::record(const OptionKey& key, double outcome, Trial time) {
  if (time < clock_) {
    throw ContractViolation("record at time " + std::to_string(time) +
                            " precedes store clock " + std::to_string(clock_));
  }
  clock_ = time;
  for (auto& inst : instances_) {
    if (inst.key == key && inst.outcome == outcome) {
      if (!inst.occurrences.empty() && inst.occurrences.back() >= time) {
        throw ContractViolation("duplicate occurrence at time " + std::to_string(time));
      }
      inst.occurrences.push_back(time);
      return;
    }
  }
  instances_.push_back(Instance{key, outcome, {time}, false});
}

std::vector<std::size_t> InstanceStore::indices_for(const OptionKey& key) const {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < instances_.size(); ++i) {
    if (instances_[i].key == key) out.push_back(i);
  }
  return out;
}

bool InstanceStore::contains(const OptionKey& key) const {
  return std::any_of(instances_.begin(), instances_.end(),
                     [&](const Instance& inst) { return inst.key == key; });
}

InstanceStore InstanceStore::project_to_actions() const {
  InstanceStore out;
  out.clock_ = clock_;
  for (const auto& inst : instances_) {
    const OptionKey plain{inst.key.action, std::nullopt};
    auto it = std::find_if(out.instances_.begin(), out.instances_.end(), [&](const Instance& o) {
      return o.key == plain && o.outcome == inst.outcome;
    });
    if (it == out.instances_.end()) {
      out.instances_.push_back(Instance{plain, inst.outcome, inst.occurrences, inst.prepopulated});
      continue;
    }
    std::vector<Trial> merged;
    merged.reserve(it->occurrences.size() + inst.occurrences.size());
    std::set_union(it->occurrences.begin(), it->occurrences.end(), inst.occurrences.begin(),
                   inst.occurrences.end(), std::back_inserter(merged));
    it->occurrences = std::move(merged);
    it->prepopulated = it->prepopulated || inst.prepopulated;
  }
  return out;
}

std::string InstanceStore::dump() const {
  std::vector<const Instance*> sorted;
  sorted.reserve(instances_.size());
  for (const auto& inst : instances_) sorted.push_back(&inst);
  std::sort(sorted.begin(), sorted.end(), [](const Instance* a, const Instance* b) {
    if (a->key != b->key) return a->key < b->key;
    return a->outcome < b->outcome;
  });
  std::ostringstream os;
  for (const Instance* inst : sorted) {
    char outcome[48];
    std::snprintf(outcome, sizeof(outcome), "%.6f", inst->outcome);
    os << to_string(inst->key) << ' ' << outcome << " [";
    for (std::size_t i = 0; i < inst->occurrences.size(); ++i) {
      if (i) os << ',';
      os << inst->occurrences[i];
    }
    os << ']' << (inst->prepopulated ? " prepopulated" : "") << '\n';
  }
  return os.str();
}

void InstanceStore::clear() {
  instances_.clear();
  clock_ = 0;
}

double base_activation(std::span<const Trial> occurrences, Trial now, double decay) {
  if (occurrences.empty()) throw ContractViolation("activation of an instance with no occurrences");
  double sum = 0.0;
  for (Trial t : occurrences) {
    if (t >= now) {
      throw ContractViolation("occurrence " + std::to_string(t) + " is not before now=" +
                              std::to_string(now));
    }
    sum += std::pow(static_cast<double>(now - t), -decay);
  }
  return std::log(sum);
}

double activation(const Instance& instance, Trial now, const IBLParams& params,
                  RngStream& stream) {
  return base_activation(instance.occurrences, now, params.decay) +
         sample_activation_noise(stream, params.noise);
}

std::vector<Retrieval> retrieval_probs(const InstanceStore& store, const OptionKey& key,
                                       Trial now, const IBLParams& params, RngStream& stream) {
  const auto& instances = store.instances();
  std::vector<Retrieval> out;
  std::vector<double> scaled;
  const double tau = params.tau();
  for (std::size_t i = 0; i < instances.size(); ++i) {
    if (instances[i].key != key) continue;
    out.push_back({i, 0.0});
    scaled.push_back(activation(instances[i], now, params, stream) / tau);
  }
  if (out.empty()) throw LookupError("no instances for option " + to_string(key));
  const double shift = *std::max_element(scaled.begin(), scaled.end());
  double total = 0.0;
  for (std::size_t j = 0; j < out.size(); ++j) {
    out[j].probability = std::exp(scaled[j] - shift);
    total += out[j].probability;
  }
  for (auto& r : out) r.probability /= total;
  return out;
}

double blended_value(const InstanceStore& store, const OptionKey& key, Trial now,
                     const IBLParams& params, RngStream& stream) {
  const auto probs = retrieval_probs(store, key, now, params, stream);
  double v = 0.0;
  for (const auto& r : probs) v += r.probability * store.instances()[r.index].outcome;
  return v;
}

std::vector<double> softmax_probs(std::span<const double> values, double beta) {
  if (values.empty()) throw InputError("softmax over an empty option list");
  if (!(beta > 0.0) || !std::isfinite(beta)) throw ParameterError("beta must be positive");
  for (double v : values) {
    if (!std::isfinite(v)) throw InputError("softmax over a non-finite value");
  }
  const double shift = *std::max_element(values.begin(), values.end());
  std::vector<double> p(values.size());
  double total = 0.0;
  for (std::size_t i = 0; i < values.size(); ++i) {
    p[i] = std::exp(beta * (values[i] - shift));
    total += p[i];
  }
  for (double& x : p) x /= total;
  return p;
}

std::size_t softmax_choose(std::span<const double> values, double beta, RngStream& stream) {
  const auto p = softmax_probs(values, beta);
  const double u = sample_uniform01(stream);
  double acc = 0.0;
  for (std::size_t i = 0; i < p.size(); ++i) {
    acc += p[i];
    if (u < acc) return i;
  }
  return p.size() - 1;
}

OptionKey softmax_choose(std::span<const std::pair<OptionKey, double>> options, double beta,
                         RngStream& stream) {
  std::vector<double> values;
  values.reserve(options.size());
  for (const auto& [key, v] : options) values.push_back(v);
  return options[softmax_choose(values, beta, stream)].first;
}

}  // namespace ibtom
