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

#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "ibtom/config.hpp"
#include "ibtom/errors.hpp"
#include "ibtom/experiment.hpp"
#include "ibtom/report.hpp"

namespace {

void print_demo(const ibtom::ExperimentOutput& out) {
  const auto& [focal, opponent] = out.labels.front();
  std::printf("%s (focal) vs %s\n", focal.c_str(), opponent.c_str());
  if (!out.traces.empty()) {
    std::printf("asset values:");
    for (double v : out.traces.front().values) std::printf(" %.3f", v);
    std::printf("\n");
  }
  std::printf("%5s %-9s %4s %4s %9s %9s\n", "trial", "focal", "def", "att", "def_r", "att_r");
  for (const auto& r : out.traces) {
    std::printf("%5ld %-9s %4zu %4zu %9.3f %9.3f\n", r.trial,
                std::string(ibtom::to_string(r.focal_role)).c_str(), r.defender_choice,
                r.attacker_choice, r.defender_reward, r.attacker_reward);
  }
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  try {
    const auto cfg = ibtom::parse_config(args, std::cout);
    if (!cfg) return 0;
    ibtom::preflight_output(cfg->output.dir);
    const auto out = ibtom::run_experiment(*cfg);
    if (cfg->experiment == ibtom::Experiment::kDemo) print_demo(out);
    for (const auto& path : ibtom::emit_results({out.rows, out.traces, out.labels}, *cfg)) {
      std::cerr << "wrote " << path << '\n';
    }
  } catch (const ibtom::UsageError& e) {
    std::cerr << "usage error: " << e.what() << '\n';
    return 2;
  } catch (const ibtom::IoError& e) {
    std::cerr << "I/O error: " << e.what() << '\n';
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
