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

#include "ibtom/experiment.hpp"

namespace ibtom {

ExperimentOutput run_experiment(const RunConfig& cfg, Execution exec) {
  cfg.validate();
  ExperimentOutput out;
  const RunOptions options{cfg.output.trace, cfg.threads};
  switch (cfg.experiment) {
    case Experiment::kPairings: {
      const auto models = cfg.agent_params(cfg.models);
      auto r = exec == Execution::kParallel
                   ? run_pairings(models, cfg.pairs, cfg.episode, cfg.seed, options)
                   : run_pairings_serial(models, cfg.pairs, cfg.episode, cfg.seed, options);
      out.rows = std::move(r.rows);
      out.traces = std::move(r.traces);
      out.labels = std::move(r.labels);
      break;
    }
    case Experiment::kOod: {
      const auto trained = cfg.agent_params(cfg.trained);
      const auto population = cfg.agent_params(cfg.opponents);
      auto r = exec == Execution::kParallel
                   ? run_ood(trained, population, cfg.samples, cfg.episode, cfg.seed, options,
                             cfg.randomization, cfg.ood_reward)
                   : run_ood_serial(trained, population, cfg.samples, cfg.episode, cfg.seed,
                                    options, cfg.randomization, cfg.ood_reward);
      out.rows = std::move(r.rows);
      out.traces = std::move(r.traces);
      for (const auto& c : r.cells) out.labels.emplace_back(c.trained, c.opponent);
      break;
    }
    case Experiment::kDemo: {
      const AgentParams focal_params = cfg.params_for(cfg.models.front());
      const AgentParams opp_params = cfg.params_for(cfg.models.size() > 1 ? cfg.models[1]
                                                                          : cfg.models.front());
      Agent focal(focal_params, cfg.episode.first_role, cfg.episode.assets.alpha.size());
      Agent opponent(opp_params, other(cfg.episode.first_role), cfg.episode.assets.alpha.size());
      const std::uint64_t id = pairing_episode_id(0, 0);
      out.traces = run_episode(focal, opponent, cfg.episode, split_stream(cfg.seed, id), id, 0);
      out.labels.emplace_back(std::string(to_string(focal_params.kind)),
                              std::string(to_string(opp_params.kind)));
      out.rows = aggregate(out.traces, out.labels);
      break;
    }
  }
  return out;
}

}  // namespace ibtom
