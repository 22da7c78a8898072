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

#include "ibtom/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "ibtom/errors.hpp"

namespace ibtom {

namespace fs = std::filesystem;

std::string format_number(double x) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", x);
  std::string s(buf);
  if (s == "-0.000000") s = "0.000000";
  return s;
}

namespace {

double rounded(double x) {
  const double r = std::round(x * 1e6) / 1e6;
  return r == 0.0 ? 0.0 : r;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace

std::string summary_csv(std::span<const SummaryRow> rows, Experiment experiment) {
  std::ostringstream os;
  const bool ood = experiment == Experiment::kOod;
  os << (ood ? "trained,opponent" : "pairing,trial") << ",role,mean,sd,stderr,n\n";
  for (const auto& r : rows) {
    if (ood) os << r.focal << ',' << r.opponent;
    else os << r.pairing() << ',' << r.trial;
    os << ',' << to_string(r.role) << ',' << format_number(r.stats.mean) << ','
       << format_number(r.stats.sd) << ',' << format_number(r.stats.se) << ',' << r.stats.n
       << '\n';
  }
  return os.str();
}

nlohmann::json summary_json(std::span<const SummaryRow> rows, const RunConfig& cfg) {
  nlohmann::json j;
  j["experiment"] = std::string(to_string(cfg.experiment));
  j["seed"] = cfg.seed;
  j["config"] = cfg.to_json();
  auto& out = j["rows"] = nlohmann::json::array();
  for (const auto& r : rows) {
    nlohmann::json row;
    if (cfg.experiment == Experiment::kOod) {
      row["trained"] = r.focal;
      row["opponent"] = r.opponent;
    } else {
      row["pairing"] = r.pairing();
      row["trial"] = r.trial;
    }
    row["role"] = std::string(to_string(r.role));
    row["mean"] = rounded(r.stats.mean);
    row["sd"] = rounded(r.stats.sd);
    row["stderr"] = rounded(r.stats.se);
    row["n"] = r.stats.n;
    out.push_back(std::move(row));
  }
  return j;
}

std::string trace_csv(std::span<const TrialRecord> records,
                      std::span<const std::pair<std::string, std::string>> labels) {
  std::ostringstream os;
  os << "episode,pairing,trial,focal_role,defender_choice,attacker_choice,defender_reward,"
        "attacker_reward,values,focal_prediction,opponent_prediction\n";
  for (const auto& r : records) {
    const auto& [focal, opponent] = labels[r.group];
    os << r.episode << ',' << focal << "-vs-" << opponent << ',' << r.trial << ','
       << to_string(r.focal_role) << ',' << r.defender_choice << ',' << r.attacker_choice << ','
       << format_number(r.defender_reward) << ',' << format_number(r.attacker_reward) << ',';
    for (std::size_t i = 0; i < r.values.size(); ++i) {
      if (i) os << ';';
      os << format_number(r.values[i]);
    }
    os << ',';
    if (r.focal_prediction) os << *r.focal_prediction;
    os << ',';
    if (r.opponent_prediction) os << *r.opponent_prediction;
    os << '\n';
  }
  return os.str();
}

std::string plot_csv(std::span<const SummaryRow> rows) {
  std::ostringstream os;
  os << "trial,series,role,mean,ci_low,ci_high\n";
  for (const auto& r : rows) {
    const Interval ci = ci95(r.stats);
    os << r.trial << ',' << r.pairing() << ',' << to_string(r.role) << ','
       << format_number(r.stats.mean) << ',' << format_number(ci.lo) << ','
       << format_number(ci.hi) << '\n';
  }
  return os.str();
}

void preflight_output(const std::string& dir) {
  std::error_code ec;
  fs::create_directories(dir, ec);
  if (ec || !fs::is_directory(dir)) {
    throw IoError("output directory '" + dir + "' cannot be created");
  }
  const fs::path probe = fs::path(dir) / ".ssgsim-write-test";
  {
    std::ofstream out(probe);
    if (!out) throw IoError("output directory '" + dir + "' is not writable");
  }
  fs::remove(probe, ec);
}

std::vector<std::string> emit_results(const EmitInput& input, const RunConfig& cfg) {
  preflight_output(cfg.output.dir);
  const fs::path dir(cfg.output.dir);
  std::vector<std::string> written;
  auto put = [&](const char* name, const std::string& content) {
    write_file(dir / name, content);
    written.push_back((dir / name).string());
  };
  put("config.json", cfg.to_json().dump(2) + "\n");
  if (cfg.output.csv) put("summary.csv", summary_csv(input.rows, cfg.experiment));
  if (cfg.output.json) put("summary.json", summary_json(input.rows, cfg).dump(2) + "\n");
  if (cfg.output.trace) put("trace.csv", trace_csv(input.traces, input.labels));
  if (cfg.output.plot && cfg.experiment != Experiment::kOod) put("plot.csv", plot_csv(input.rows));
  return written;
}

}  // namespace ibtom
