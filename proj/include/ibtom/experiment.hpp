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

#ifndef IBTOM_EXPERIMENT_HPP_
#define IBTOM_EXPERIMENT_HPP_

#include <string>
#include <utility>
#include <vector>

#include "ibtom/config.hpp"
#include "ibtom/harness.hpp"

namespace ibtom {

struct ExperimentOutput {
  std::vector<SummaryRow> rows;
  std::vector<TrialRecord> traces;
  std::vector<std::pair<std::string, std::string>> labels;  // indexed by TrialRecord::group
};

enum class Execution { kParallel, kSerial };

// Runs cfg.experiment. The demo plays one episode of models[0] against
// models[1] (or itself) and always keeps its trace.
ExperimentOutput run_experiment(const RunConfig& cfg, Execution exec = Execution::kParallel);

}  // namespace ibtom

#endif  // IBTOM_EXPERIMENT_HPP_
