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

#ifndef IBTOM_REPORT_HPP_
#define IBTOM_REPORT_HPP_

#include <span>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "ibtom/config.hpp"
#include "ibtom/harness.hpp"

namespace ibtom {

// Fixed six fractional digits; negative zero prints as zero.
std::string format_number(double x);

// pairings/demo: pairing,trial,role,mean,sd,stderr,n
// ood:           trained,opponent,role,mean,sd,stderr,n
std::string summary_csv(std::span<const SummaryRow> rows, Experiment experiment);

nlohmann::json summary_json(std::span<const SummaryRow> rows, const RunConfig& cfg);

std::string trace_csv(std::span<const TrialRecord> records,
                      std::span<const std::pair<std::string, std::string>> labels);

// Long format for plotting mean reward against trial, one series per pairing.
std::string plot_csv(std::span<const SummaryRow> rows);

// Creates the directory and checks that it accepts files. Throws IoError.
void preflight_output(const std::string& dir);

struct EmitInput {
  std::span<const SummaryRow> rows;
  std::span<const TrialRecord> traces;
  std::span<const std::pair<std::string, std::string>> labels;
};

// Writes config.json and the enabled outputs; returns the written paths.
std::vector<std::string> emit_results(const EmitInput& input, const RunConfig& cfg);

}  // namespace ibtom

#endif  // IBTOM_REPORT_HPP_
