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

#include "ibtom/agents.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <utility>

#include "ibtom/errors.hpp"

namespace ibtom {

std::string_view to_string(ModelKind kind) {
  switch (kind) {
    case ModelKind::kRandom: return "Random";
    case ModelKind::kUCB: return "UCB";
    case ModelKind::kIBL: return "IBL";
    case ModelKind::kIBToM: return "IBToM";
  }
  return "?";
}

std::string_view to_string(OpponentUpdate update) {
  return update == OpponentUpdate::kIndicator ? "indicator" : "outcome";
}

std::string_view to_string(TransferMode mode) {
  switch (mode) {
    case TransferMode::kCarry: return "carry";
    case TransferMode::kReset: return "reset";
    case TransferMode::kSwap: return "swap";
  }
  return "?";
}

std::string_view to_string(PredictionUse use) {
  return use == PredictionUse::kExpected ? "expected" : "sample";
}

PredictionUse prediction_use_from_string(std::string_view name) {
  if (name == "sample") return PredictionUse::kSample;
  if (name == "expected") return PredictionUse::kExpected;
  throw InputError("unknown prediction use '" + std::string(name) + "'");
}

ModelKind model_kind_from_string(std::string_view name) {
  for (ModelKind k : {ModelKind::kRandom, ModelKind::kUCB, ModelKind::kIBL, ModelKind::kIBToM}) {
    if (name == to_string(k)) return k;
  }
  throw InputError("unknown model kind '" + std::string(name) + "'");
}

OpponentUpdate opponent_update_from_string(std::string_view name) {
  if (name == "outcome") return OpponentUpdate::kOutcomeWeighted;
  if (name == "indicator") return OpponentUpdate::kIndicator;
  throw InputError("unknown opponent update '" + std::string(name) + "'");
}

TransferMode transfer_mode_from_string(std::string_view name) {
  for (TransferMode m : {TransferMode::kCarry, TransferMode::kReset, TransferMode::kSwap}) {
    if (name == to_string(m)) return m;
  }
  throw InputError("unknown transfer mode '" + std::string(name) + "'");
}

TransferMode default_transfer(ModelKind kind) {
  return kind == ModelKind::kIBToM ? TransferMode::kSwap : TransferMode::kCarry;
}

void AgentParams::validate() const {
  ibl.validate();
  if (!(ucb_c >= 0.0) || !std::isfinite(ucb_c)) {
    throw ParameterError("exploration must be a nonnegative finite number");
  }
  if (opponent_beta && (!(*opponent_beta > 0.0) || !std::isfinite(*opponent_beta))) {
    throw ParameterError("opponent_beta must be a positive finite number");
  }
}

AgentParams AgentParams::defaults(ModelKind kind) {
  AgentParams p;
  p.kind = kind;
  return p;
}

void UcbStats::update(AssetId a, double reward) {
  ++count.at(a);
  reward_sum[a] += reward;
  ++total;
}

std::vector<double> UcbStats::scores(double c) const {
  std::vector<double> s(count.size());
  const double log_t = total > 0 ? std::log(static_cast<double>(total)) : 0.0;
  for (std::size_t a = 0; a < count.size(); ++a) {
    s[a] = count[a] == 0 ? std::numeric_limits<double>::infinity()
                         : mean(a) + c * std::sqrt(log_t / static_cast<double>(count[a]));
  }
  return s;
}

void UcbStats::clear() {
  std::fill(count.begin(), count.end(), 0);
  std::fill(reward_sum.begin(), reward_sum.end(), 0.0);
  total = 0;
}

AssetId ucb_select(const UcbStats& stats, double c, RngStream& stream) {
  const auto s = stats.scores(c);
  const double best = *std::max_element(s.begin(), s.end());
  std::vector<AssetId> ties;
  for (AssetId a = 0; a < s.size(); ++a) {
    if (s[a] == best) ties.push_back(a);
  }
  return ties.size() == 1 ? ties.front() : ties[sample_index(stream, ties.size())];
}

Agent::Agent(AgentParams params, Role role, std::size_t num_actions)
    : params_(std::move(params)), role_(role), initial_role_(role), num_actions_(num_actions), ucb_(num_actions) {
  if (num_actions_ == 0) throw InputError("agent needs at least one action");
  params_.validate();
  prepopulate();
}

void Agent::prepopulate() {
  const double x0 = params_.ibl.default_outcome;
  switch (params_.kind) {
    case ModelKind::kIBL:
      for (AssetId a = 0; a < num_actions_; ++a) self_store_.prepopulate({a, std::nullopt}, x0);
      break;
    case ModelKind::kIBToM:
      for (AssetId a = 0; a < num_actions_; ++a) {
        for (AssetId c = 0; c < num_actions_; ++c) {
          self_store_.prepopulate({a, c}, x0);
          opp_store_.prepopulate({a, c}, x0);
        }
      }
      break;
    default:
      break;
  }
}

void Agent::reset() {
  self_store_.clear();
  opp_store_.clear();
  ucb_.clear();
  clock_ = 0;
  role_ = initial_role_;
  last_prediction_.reset();
  prepopulate();
}

std::vector<double> Agent::opponent_values(RngStream& stream) const {
  if (params_.kind != ModelKind::kIBToM) {
    throw ContractViolation("opponent prediction requires an IBToM agent");
  }
  const InstanceStore by_action = opp_store_.project_to_actions();
  std::vector<double> values(num_actions_);
  for (AssetId a = 0; a < num_actions_; ++a) {
    values[a] = blended_value(by_action, {a, std::nullopt}, now(), params_.ibl, stream);
  }
  return values;
}

AssetId Agent::predict_opponent(RngStream& stream) {
  const auto values = opponent_values(stream);
  const AssetId k = softmax_choose(values, params_.beta_o(), stream);
  last_prediction_ = k;
  return k;
}

AssetId Agent::act(RngStream& stream) {
  switch (params_.kind) {
    case ModelKind::kRandom:
      return sample_index(stream, num_actions_);
    case ModelKind::kUCB: {
      if (!params_.ucb_softmax) return ucb_select(ucb_, params_.ucb_c, stream);
      const auto s = ucb_.scores(params_.ucb_c);
      std::vector<AssetId> untried;
      for (AssetId a = 0; a < s.size(); ++a) {
        if (!std::isfinite(s[a])) untried.push_back(a);
      }
      if (!untried.empty()) return untried[sample_index(stream, untried.size())];
      return softmax_choose(s, params_.ibl.beta, stream);
    }
    case ModelKind::kIBL: {
      std::vector<double> v(num_actions_);
      for (AssetId a = 0; a < num_actions_; ++a) {
        v[a] = blended_value(self_store_, {a, std::nullopt}, now(), params_.ibl, stream);
      }
      return softmax_choose(v, params_.ibl.beta, stream);
    }
    case ModelKind::kIBToM: {
      if (params_.prediction == PredictionUse::kExpected) {
        const auto p = softmax_probs(opponent_values(stream), params_.beta_o());
        last_prediction_ =
            static_cast<AssetId>(std::max_element(p.begin(), p.end()) - p.begin());
        std::vector<double> v(num_actions_, 0.0);
        for (AssetId a = 0; a < num_actions_; ++a) {
          for (AssetId k = 0; k < num_actions_; ++k) {
            v[a] += p[k] * blended_value(self_store_, {a, k}, now(), params_.ibl, stream);
          }
        }
        return softmax_choose(v, params_.ibl.beta, stream);
      }
      const AssetId predicted = predict_opponent(stream);
      std::vector<double> v(num_actions_);
      for (AssetId a = 0; a < num_actions_; ++a) {
        v[a] = blended_value(self_store_, {a, predicted}, now(), params_.ibl, stream);
      }
      return softmax_choose(v, params_.ibl.beta, stream);
    }
  }
  throw ContractViolation("unknown model kind");
}

void Agent::observe(AssetId own_action, double own_outcome, AssetId opp_action,
                    double opp_outcome, Trial time) {
  if (time <= clock_) {
    throw ContractViolation("observe at time " + std::to_string(time) +
                            " does not advance agent clock " + std::to_string(clock_));
  }
  if (own_action >= num_actions_ || opp_action >= num_actions_) {
    throw InputError("observed action out of range");
  }
  clock_ = time;
  switch (params_.kind) {
    case ModelKind::kRandom:
      break;
    case ModelKind::kUCB:
      ucb_.update(own_action, own_outcome);
      break;
    case ModelKind::kIBL:
      self_store_.record({own_action, std::nullopt}, own_outcome, time);
      break;
    case ModelKind::kIBToM:
      self_store_.record({own_action, opp_action}, own_outcome, time);
      if (params_.opponent_update == OpponentUpdate::kOutcomeWeighted) {
        opp_store_.record({opp_action, own_action}, opp_outcome, time);
      } else {
        for (AssetId c = 0; c < num_actions_; ++c) {
          opp_store_.record({c, own_action}, c == opp_action ? 1.0 : 0.0, time);
        }
      }
      break;
  }
}

void Agent::switch_role(TransferMode mode) {
  if (mode == TransferMode::kSwap && params_.kind != ModelKind::kIBToM &&
      params_.kind != ModelKind::kRandom) {
    throw ConfigError("swap transfer requires an IBToM agent, got " +
                      std::string(to_string(params_.kind)));
  }
  role_ = other(role_);
  switch (mode) {
    case TransferMode::kCarry:
      break;
    case TransferMode::kReset:
      self_store_.clear();
      opp_store_.clear();
      ucb_.clear();
      last_prediction_.reset();
      prepopulate();
      break;
    case TransferMode::kSwap:
      std::swap(self_store_, opp_store_);
      break;
  }
}

}  // namespace ibtom
