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

#ifndef IBTOM_AGENTS_HPP_
#define IBTOM_AGENTS_HPP_

#include <optional>
#include <string_view>
#include <vector>

#include "ibtom/game.hpp"
#include "ibtom/ibl.hpp"
#include "ibtom/rng.hpp"

namespace ibtom {

enum class ModelKind { kRandom, kUCB, kIBL, kIBToM };
enum class OpponentUpdate { kOutcomeWeighted, kIndicator };
enum class TransferMode { kCarry, kReset, kSwap };
// How IBToM uses its opponent model: act on one sampled prediction, or weight
// each conditioned value by the predicted probability of that opponent action.
enum class PredictionUse { kSample, kExpected };

std::string_view to_string(ModelKind kind);
std::string_view to_string(OpponentUpdate update);
std::string_view to_string(TransferMode mode);
std::string_view to_string(PredictionUse use);
PredictionUse prediction_use_from_string(std::string_view name);
ModelKind model_kind_from_string(std::string_view name);
OpponentUpdate opponent_update_from_string(std::string_view name);
TransferMode transfer_mode_from_string(std::string_view name);

// Swap for IBToM, carry for everything else.
TransferMode default_transfer(ModelKind kind);

struct AgentParams {
  ModelKind kind = ModelKind::kIBL;
  IBLParams ibl;
  double ucb_c = 10.0;
  // Opponent-prediction inverse temperature; aliases ibl.beta when unset.
  std::optional<double> opponent_beta;
  OpponentUpdate opponent_update = OpponentUpdate::kOutcomeWeighted;
  PredictionUse prediction = PredictionUse::kExpected;
  // UCB only: sample from softmax(beta * score) instead of taking the argmax.
  bool ucb_softmax = false;
  // Role-switch behaviour; unset means default_transfer(kind).
  std::optional<TransferMode> transfer;

  double beta_o() const { return opponent_beta.value_or(ibl.beta); }
  void validate() const;

  // Inverse temperature 0.05, noise 0.25, decay 0.5, exploration 10.
  static AgentParams defaults(ModelKind kind);
};

struct UcbStats {
  std::vector<long> count;
  std::vector<double> reward_sum;
  long total = 0;

  explicit UcbStats(std::size_t num_actions = kDefaultNumAssets)
      : count(num_actions, 0), reward_sum(num_actions, 0.0) {}

  double mean(AssetId a) const {
    return count[a] == 0 ? 0.0 : reward_sum[a] / static_cast<double>(count[a]);
  }
  void update(AssetId a, double reward);
  // Q(a) + c * sqrt(ln t / N(a)); +inf for untried actions.
  std::vector<double> scores(double c) const;
  void clear();
};

// Untried actions first (uniform among them), then argmax of scores with
// uniform tie-breaking.
AssetId ucb_select(const UcbStats& stats, double c, RngStream& stream);

class Agent {
 public:
  Agent(AgentParams params, Role role, std::size_t num_actions = kDefaultNumAssets);

  AssetId act(RngStream& stream);

  // IBToM only: samples the opponent's next action from softmax(beta_o * O).
  AssetId predict_opponent(RngStream& stream);
  // Blended O value per opponent action (draws activation noise).
  std::vector<double> opponent_values(RngStream& stream) const;

  void observe(AssetId own_action, double own_outcome, AssetId opp_action, double opp_outcome,
               Trial time);

  void switch_role(TransferMode mode);
  TransferMode transfer_mode() const {
    return params_.transfer.value_or(default_transfer(params_.kind));
  }

  // Fresh episode: starting role, prepopulated stores, zeroed statistics, clock 0.
  void reset();

  const AgentParams& params() const { return params_; }
  ModelKind kind() const { return params_.kind; }
  Role role() const { return role_; }
  Trial clock() const { return clock_; }
  std::size_t num_actions() const { return num_actions_; }
  const InstanceStore& self_store() const { return self_store_; }
  const InstanceStore& opp_store() const { return opp_store_; }
  const UcbStats& ucb() const { return ucb_; }
  std::optional<AssetId> last_prediction() const { return last_prediction_; }

 private:
  void prepopulate();
  Trial now() const { return clock_ + 1; }

  AgentParams params_;
  Role role_;
  Role initial_role_;
  std::size_t num_actions_;
  InstanceStore self_store_;
  // IBToM: keyed (opponent action | own action), valued by the opponent's outcome.
  InstanceStore opp_store_;
  UcbStats ucb_;
  Trial clock_ = 0;
  std::optional<AssetId> last_prediction_;
};

}  // namespace ibtom

#endif  // IBTOM_AGENTS_HPP_
