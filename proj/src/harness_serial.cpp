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

// Serial reference drivers. They share the per-episode kernels with the
// OpenMP drivers in harness.cpp and must produce identical results.

#include "ibtom/harness.hpp"

namespace ibtom {

PairingsResult run_pairings_serial(std::span<const AgentParams> models, int pairs,
                                   const EpisodeConfig& cfg, std::uint64_t seed,
                                   const RunOptions& options) {
  detail::validate_run(models, pairs, cfg);
  PairingsResult result;
  result.labels = detail::pairing_labels(models);
  const auto trials = static_cast<std::size_t>(cfg.total_trials());
  for (std::uint32_t g = 0; g < result.labels.size(); ++g) {
    std::vector<double> rewards;
    rewards.reserve(static_cast<std::size_t>(pairs) * trials);
    for (std::uint32_t p = 0; p < static_cast<std::uint32_t>(pairs); ++p) {
      auto records = detail::play_pairing_episode(models, g, p, cfg, seed);
      for (const auto& r : records) rewards.push_back(r.focal_reward());
      if (options.keep_traces) {
        std::move(records.begin(), records.end(), std::back_inserter(result.traces));
      }
    }
    result.focal_rewards.push_back(std::move(rewards));
  }
  result.rows = detail::summarize_pairings(result.labels, pairs, cfg, result.focal_rewards);
  return result;
}

OodResult run_ood_serial(std::span<const AgentParams> trained,
                         std::span<const AgentParams> population, int samples,
                         const EpisodeConfig& cfg, std::uint64_t seed,
                         const RunOptions& options, const Randomization& how,
                         EpisodeReward reward) {
  detail::validate_run(trained, samples, cfg);
  detail::validate_run(population, samples, cfg);
  OodResult result = detail::prepare_ood(trained, population, samples);
  std::uint32_t cell = 0;
  for (const auto& t : trained) {
    for (std::uint32_t k = 0; k < population.size(); ++k, ++cell) {
      for (std::uint32_t s = 0; s < static_cast<std::uint32_t>(samples); ++s) {
        auto records = detail::play_ood_episode(t, population[k], cell, k, s, cfg, seed, how);
        result.cells[cell].episode_rewards[s] = detail::episode_reward(records, reward);
        if (options.keep_traces) {
          std::move(records.begin(), records.end(), std::back_inserter(result.traces));
        }
      }
    }
  }
  detail::finish_ood(result);
  return result;
}

}  // namespace ibtom
