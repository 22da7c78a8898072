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

#ifndef IBTOM_HARNESS_HPP_
#define IBTOM_HARNESS_HPP_

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "ibtom/agents.hpp"
#include "ibtom/game.hpp"
#include "ibtom/rng.hpp"
#include "ibtom/stats.hpp"

namespace ibtom {

struct EpisodeConfig {
  int trials_per_role = 50;
  Role first_role = Role::kAttacker;
  // Unset means each agent's own transfer_mode().
  std::optional<TransferMode> focal_transfer;
  std::optional<TransferMode> opponent_transfer;
  AssetPrior assets;
  // When false the episode is a single phase of trials_per_role trials.
  bool switch_roles = true;

  int total_trials() const { return switch_roles ? 2 * trials_per_role : trials_per_role; }
  void validate() const;
};

struct TrialRecord {
  std::uint64_t episode = 0;
  std::uint32_t group = 0;  // pairing or OOD cell index
  Trial trial = 0;
  Role focal_role = Role::kDefender;
  AssetId defender_choice = 0;
  AssetId attacker_choice = 0;
  double defender_reward = 0.0;
  double attacker_reward = 0.0;
  std::vector<double> values;
  std::optional<AssetId> focal_prediction;
  std::optional<AssetId> opponent_prediction;

  double focal_reward() const {
    return focal_role == Role::kDefender ? defender_reward : attacker_reward;
  }
};

// Plays one episode. Both agents are reset first; the focal agent must hold
// cfg.first_role and the opponent the other role. Stream layout: derive(0)
// asset values, derive(1) focal decisions, derive(2) opponent decisions.
std::vector<TrialRecord> run_episode(Agent& focal, Agent& opponent, const EpisodeConfig& cfg,
                                     const RngStream& stream, std::uint64_t episode_id = 0,
                                     std::uint32_t group = 0);

struct SummaryRow {
  std::string focal;
  std::string opponent;
  Trial trial = 0;  // 0 for whole-episode rows
  Role role = Role::kDefender;
  Summary stats;

  std::string pairing() const { return focal + "-vs-" + opponent; }
};

// Groups by (group, trial) over focal rewards. labels[g] = {focal, opponent}.
// Rows come out sorted by (pairing, trial). Throws InputError on empty input.
std::vector<SummaryRow> aggregate(std::span<const TrialRecord> records,
                                  std::span<const std::pair<std::string, std::string>> labels);

struct RunOptions {
  bool keep_traces = false;
  int threads = 0;  // 0: OpenMP default
};

struct PairingsResult {
  std::vector<SummaryRow> rows;
  std::vector<std::pair<std::string, std::string>> labels;
  // focal_rewards[g][pair * total_trials + (trial - 1)]
  std::vector<std::vector<double>> focal_rewards;
  std::vector<TrialRecord> traces;
};

// Every ordered (focal, opponent) combination of `models`, `pairs` episodes
// each. Episode stream: split_stream(seed, pairing_episode_id(g, pair)).
PairingsResult run_pairings(std::span<const AgentParams> models, int pairs,
                            const EpisodeConfig& cfg, std::uint64_t seed,
                            const RunOptions& options = {});

// Single-threaded reference with identical output.
PairingsResult run_pairings_serial(std::span<const AgentParams> models, int pairs,
                                   const EpisodeConfig& cfg, std::uint64_t seed,
                                   const RunOptions& options = {});

std::uint64_t pairing_episode_id(std::uint32_t group, std::uint32_t pair);
std::uint64_t ood_episode_id(std::uint32_t opponent_kind, std::uint32_t sample);

// theta' = multiplier * theta * B, B ~ Beta(a, b), applied in order to
// beta, noise, decay (IBL, IBToM) or beta, exploration (UCB). Random is
// returned unchanged.
struct Randomization {
  double multiplier = 2.0;
  double beta_a = 10.0;
  double beta_b = 10.0;
};
AgentParams randomize_params(const AgentParams& base, RngStream& stream,
                             const Randomization& how = {});

enum class EpisodeReward { kMeanPerTrial, kSum };

struct OodCell {
  std::string trained;
  std::string opponent;
  std::vector<double> episode_rewards;
};

struct OodResult {
  // One row per (trained, opponent kind) plus a pooled "ALL" row per trained model.
  std::vector<SummaryRow> rows;
  std::vector<OodCell> cells;
  std::vector<OodCell> pooled;
  std::vector<TrialRecord> traces;
};

// Each trained model defends for trials_per_role trials against `samples`
// randomized opponents per population entry. Opponent draws depend only on
// (seed, opponent kind index, sample), so every trained model meets the same
// opponents.
OodResult run_ood(std::span<const AgentParams> trained, std::span<const AgentParams> population,
                  int samples, const EpisodeConfig& cfg, std::uint64_t seed,
                  const RunOptions& options = {}, const Randomization& how = {},
                  EpisodeReward reward = EpisodeReward::kMeanPerTrial);

OodResult run_ood_serial(std::span<const AgentParams> trained,
                         std::span<const AgentParams> population, int samples,
                         const EpisodeConfig& cfg, std::uint64_t seed,
                         const RunOptions& options = {}, const Randomization& how = {},
                         EpisodeReward reward = EpisodeReward::kMeanPerTrial);

namespace detail {

// Shared per-episode kernels used by both the OpenMP and serial drivers.
std::vector<TrialRecord> play_pairing_episode(std::span<const AgentParams> models,
                                              std::uint32_t group, std::uint32_t pair,
                                              const EpisodeConfig& cfg, std::uint64_t seed);

std::vector<TrialRecord> play_ood_episode(const AgentParams& trained,
                                          const AgentParams& opponent_base,
                                          std::uint32_t cell, std::uint32_t kind,
                                          std::uint32_t sample, const EpisodeConfig& cfg,
                                          std::uint64_t seed, const Randomization& how);

EpisodeConfig ood_episode_config(const EpisodeConfig& cfg);

Role focal_role_at(const EpisodeConfig& cfg, Trial trial);

double episode_reward(std::span<const TrialRecord> records, EpisodeReward reward);

std::vector<std::pair<std::string, std::string>> pairing_labels(
    std::span<const AgentParams> models);

// Rows from a filled focal-reward matrix, sorted by (pairing, trial).
std::vector<SummaryRow> summarize_pairings(
    std::span<const std::pair<std::string, std::string>> labels, int pairs,
    const EpisodeConfig& cfg, const std::vector<std::vector<double>>& focal_rewards);

// Allocates cells (trained-major) and pooled entries with `samples` slots.
OodResult prepare_ood(std::span<const AgentParams> trained,
                      std::span<const AgentParams> population, int samples);

// Fills pooled rewards and rows once every cell is complete.
void finish_ood(OodResult& result);

void validate_run(std::span<const AgentParams> models, int count, const EpisodeConfig& cfg);

}  // namespace detail

}  // namespace ibtom

#endif  // IBTOM_HARNESS_HPP_
