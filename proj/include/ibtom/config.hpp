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

#ifndef IBTOM_CONFIG_HPP_
#define IBTOM_CONFIG_HPP_

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "json.hpp"

#include "ibtom/agents.hpp"
#include "ibtom/harness.hpp"

namespace ibtom {

enum class Experiment { kPairings, kOod, kDemo };

std::string_view to_string(Experiment e);

struct OutputOptions {
  std::string dir = "out";
  bool csv = true;
  bool json = false;
  bool trace = false;
  bool plot = false;
};

// Per-model parameter values layered over the shared defaults.
struct ParamOverrides {
  std::optional<double> beta;
  std::optional<double> noise;
  std::optional<double> decay;
  std::optional<double> exploration;
  std::optional<double> default_outcome;
  std::optional<double> temperature;
  std::optional<double> opponent_beta;
  std::optional<OpponentUpdate> opponent_update;
  std::optional<PredictionUse> prediction;
  std::optional<bool> ucb_softmax;
};

struct RunConfig {
  static constexpr int kVersion = 1;

  Experiment experiment = Experiment::kPairings;
  std::uint64_t seed = 42;
  int pairs = 1000;
  int samples = 1000;
  EpisodeConfig episode;
  std::vector<ModelKind> models{ModelKind::kIBToM, ModelKind::kIBL, ModelKind::kUCB,
                                ModelKind::kRandom};
  std::vector<ModelKind> trained{ModelKind::kIBToM, ModelKind::kIBL, ModelKind::kUCB};
  std::vector<ModelKind> opponents{ModelKind::kRandom, ModelKind::kUCB, ModelKind::kIBL,
                                   ModelKind::kIBToM};
  // Shared defaults, every field set.
  ParamOverrides params{0.05, 0.25, 0.5, 10.0, 0.0, std::nullopt, std::nullopt,
                        OpponentUpdate::kOutcomeWeighted, PredictionUse::kExpected, false};
  std::map<ModelKind, ParamOverrides> overrides;
  std::map<ModelKind, TransferMode> transfer;
  Randomization randomization;
  EpisodeReward ood_reward = EpisodeReward::kMeanPerTrial;
  int threads = 0;  // speed only, never echoed
  OutputOptions output;

  AgentParams params_for(ModelKind kind) const;
  std::vector<AgentParams> agent_params(std::span<const ModelKind> kinds) const;

  // Throws UsageError naming the first invalid key.
  void validate() const;

  nlohmann::json to_json() const;
  // Strict: unknown keys and ill-typed values raise UsageError.
  static RunConfig from_json(const nlohmann::json& j);
};

// Resolves defaults <- --config file <- flags. `args` excludes the program
// name. Returns nullopt when --help was requested (help text goes to `out`).
std::optional<RunConfig> parse_config(std::span<const std::string> args, std::ostream& out);

}  // namespace ibtom

#endif  // IBTOM_CONFIG_HPP_
