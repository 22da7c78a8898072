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

#include <cmath>
#include <map>

#include "doctest.h"
#include "ibtom/errors.hpp"
#include "ibtom/harness.hpp"

using namespace ibtom;

namespace {

std::vector<AgentParams> all_models() {
  return {AgentParams::defaults(ModelKind::kIBToM), AgentParams::defaults(ModelKind::kIBL),
          AgentParams::defaults(ModelKind::kUCB), AgentParams::defaults(ModelKind::kRandom)};
}

}  // namespace

TEST_CASE("run_episode plays both roles and is reproducible") {
  EpisodeConfig cfg;
  Agent focal(AgentParams::defaults(ModelKind::kIBToM), cfg.first_role);
  Agent opp(AgentParams::defaults(ModelKind::kUCB), other(cfg.first_role));
  const RngStream s = split_stream(7, 3);
  const auto a = run_episode(focal, opp, cfg, s, 3);
  REQUIRE(a.size() == 100);
  for (const auto& r : a) {
    CHECK(r.focal_role == (r.trial <= 50 ? cfg.first_role : other(cfg.first_role)));
    CHECK(r.defender_reward + r.attacker_reward == 0.0);
    CHECK(r.values.size() == 2);
  }
  CHECK(a.front().trial == 1);
  CHECK(a.back().trial == 100);
  CHECK(focal.role() == other(cfg.first_role));
  const auto b = run_episode(focal, opp, cfg, s, 3);
  for (std::size_t i = 0; i < a.size(); ++i) {
    CHECK(a[i].defender_choice == b[i].defender_choice);
    CHECK(a[i].attacker_choice == b[i].attacker_choice);
    CHECK(a[i].focal_reward() == b[i].focal_reward());
  }
}

TEST_CASE("run_episode checks starting roles") {
  EpisodeConfig cfg;
  Agent focal(AgentParams::defaults(ModelKind::kIBL), other(cfg.first_role));
  Agent opp(AgentParams::defaults(ModelKind::kIBL), cfg.first_role);
  CHECK_THROWS(run_episode(focal, opp, cfg, split_stream(1, 0)));
}

TEST_CASE("Random versus Random defends at about -25 per trial") {
  EpisodeConfig cfg;
  cfg.first_role = Role::kDefender;
  cfg.switch_roles = false;
  Agent d(AgentParams::defaults(ModelKind::kRandom), Role::kDefender);
  Agent a(AgentParams::defaults(ModelKind::kRandom), Role::kAttacker);
  double sum = 0.0;
  long n = 0;
  for (std::uint32_t e = 0; e < 4000; ++e) {
    for (const auto& r : run_episode(d, a, cfg, split_stream(11, e), e)) {
      sum += r.defender_reward;
      ++n;
    }
  }
  CHECK(std::fabs(sum / static_cast<double>(n) + 25.0) < 1.0);
}

TEST_CASE("aggregate computes per-trial statistics") {
  std::vector<TrialRecord> recs(2);
  recs[0].trial = recs[1].trial = 1;
  recs[0].focal_role = recs[1].focal_role = Role::kDefender;
  recs[0].defender_reward = -10.0;
  recs[1].defender_reward = -20.0;
  const std::vector<std::pair<std::string, std::string>> labels{{"IBL", "UCB"}};
  const auto rows = aggregate(recs, labels);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].pairing() == "IBL-vs-UCB");
  CHECK(rows[0].role == Role::kDefender);
  CHECK(rows[0].stats.mean == -15.0);
  CHECK(rows[0].stats.sd == doctest::Approx(7.0711).epsilon(1e-4));
  CHECK(rows[0].stats.se == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(rows[0].stats.n == 2);

  const auto one = aggregate(std::span<const TrialRecord>(recs.data(), 1), labels);
  CHECK(one[0].stats.sd == 0.0);
  CHECK(one[0].stats.n == 1);
  CHECK_THROWS_AS(aggregate(std::span<const TrialRecord>{}, labels), InputError);
}

TEST_CASE("pairings cover every ordered pair and match the serial driver") {
  const auto models = all_models();
  EpisodeConfig cfg;
  const auto par = run_pairings(models, 20, cfg, 5, {.keep_traces = true, .threads = 2});
  const auto ser = run_pairings_serial(models, 20, cfg, 5, {.keep_traces = true});
  CHECK(par.labels.size() == 16);
  CHECK(par.rows.size() == 16 * 100);
  REQUIRE(par.rows.size() == ser.rows.size());
  for (std::size_t i = 0; i < par.rows.size(); ++i) {
    CHECK(par.rows[i].pairing() == ser.rows[i].pairing());
    CHECK(par.rows[i].trial == ser.rows[i].trial);
    CHECK(par.rows[i].stats.mean == ser.rows[i].stats.mean);
    CHECK(par.rows[i].stats.sd == ser.rows[i].stats.sd);
  }
  CHECK(par.focal_rewards == ser.focal_rewards);
  CHECK(par.traces.size() == 16u * 20u * 100u);
  // Rows agree with a direct aggregation of the traces.
  const auto direct = aggregate(ser.traces, ser.labels);
  REQUIRE(direct.size() == ser.rows.size());
  for (std::size_t i = 0; i < direct.size(); ++i) {
    CHECK(direct[i].stats.mean == doctest::Approx(ser.rows[i].stats.mean).epsilon(1e-12));
  }
}

TEST_CASE("fewer pairs reproduce a prefix of the episodes") {
  const auto models = all_models();
  EpisodeConfig cfg;
  const auto small = run_pairings_serial(models, 5, cfg, 9);
  const auto large = run_pairings_serial(models, 10, cfg, 9);
  for (std::size_t g = 0; g < small.focal_rewards.size(); ++g) {
    for (std::size_t i = 0; i < small.focal_rewards[g].size(); ++i) {
      CHECK(small.focal_rewards[g][i] == large.focal_rewards[g][i]);
    }
  }
}

TEST_CASE("duplicate model kinds get distinct labels") {
  const std::vector<AgentParams> models{AgentParams::defaults(ModelKind::kIBL),
                                        AgentParams::defaults(ModelKind::kIBL)};
  const auto labels = detail::pairing_labels(models);
  std::map<std::string, int> seen;
  for (const auto& [f, o] : labels) ++seen[f + "-vs-" + o];
  CHECK(seen.size() == labels.size());
}

TEST_CASE("episode ids keep their fields apart") {
  CHECK(pairing_episode_id(0, 0) != ood_episode_id(0, 0));
  CHECK(pairing_episode_id(1, 0) != pairing_episode_id(0, 1));
  CHECK(ood_episode_id(1, 0) != ood_episode_id(0, 1));
}

TEST_CASE("randomized parameters average to the base value") {
  const AgentParams base = AgentParams::defaults(ModelKind::kIBL);
  RngStream s = split_stream(21, 0);
  double beta = 0.0, noise = 0.0, decay = 0.0;
  const int n = 20'000;
  for (int i = 0; i < n; ++i) {
    const AgentParams p = randomize_params(base, s);
    CHECK(p.ibl.beta > 0.0);
    CHECK(p.ibl.beta < 2.0 * base.ibl.beta);
    beta += p.ibl.beta;
    noise += p.ibl.noise;
    decay += p.ibl.decay;
  }
  CHECK(std::fabs(beta / n - base.ibl.beta) < 0.01 * base.ibl.beta);
  CHECK(std::fabs(noise / n - base.ibl.noise) < 0.01 * base.ibl.noise);
  CHECK(std::fabs(decay / n - base.ibl.decay) < 0.01 * base.ibl.decay);

  const AgentParams ucb = AgentParams::defaults(ModelKind::kUCB);
  const AgentParams r = randomize_params(ucb, s);
  CHECK(r.ucb_c != ucb.ucb_c);
  const AgentParams rnd = AgentParams::defaults(ModelKind::kRandom);
  CHECK(randomize_params(rnd, s).kind == ModelKind::kRandom);
}

TEST_CASE("OOD evaluation fills every cell and pools per trained model") {
  const std::vector<AgentParams> trained{AgentParams::defaults(ModelKind::kIBToM),
                                         AgentParams::defaults(ModelKind::kIBL),
                                         AgentParams::defaults(ModelKind::kUCB)};
  const auto population = all_models();
  EpisodeConfig cfg;
  const auto res = run_ood(trained, population, 30, cfg, 3, {.threads = 2});
  const auto ser = run_ood_serial(trained, population, 30, cfg, 3);
  CHECK(res.cells.size() == 12);
  CHECK(res.pooled.size() == 3);
  CHECK(res.rows.size() == 15);
  for (std::size_t c = 0; c < res.cells.size(); ++c) {
    CHECK(res.cells[c].episode_rewards.size() == 30);
    CHECK(res.cells[c].episode_rewards == ser.cells[c].episode_rewards);
    for (double x : res.cells[c].episode_rewards) {
      CHECK(x <= 0.0);
      CHECK(x >= -100.0);
    }
  }
  for (const auto& p : res.pooled) CHECK(p.episode_rewards.size() == 120);
  for (const auto& row : res.rows) {
    CHECK(row.role == Role::kDefender);
    if (row.opponent == "Random") CHECK(row.stats.mean >= -29.0);
  }
}

TEST_CASE("run validation rejects bad counts") {
  const auto models = all_models();
  EpisodeConfig cfg;
  CHECK_THROWS_AS(run_pairings(models, 0, cfg, 1), InputError);
  cfg.trials_per_role = 0;
  CHECK_THROWS_AS(run_pairings(models, 1, cfg, 1), ParameterError);
}

TEST_CASE("summaries and Welch test") {
  const std::vector<double> a{1, 2, 3, 4, 5};
  const std::vector<double> b{2, 4, 6, 8, 10};
  const Summary s = summarize(a);
  CHECK(s.mean == 3.0);
  CHECK(s.sd == doctest::Approx(std::sqrt(2.5)).epsilon(1e-14));
  const Interval ci = ci95(s);
  CHECK(ci.lo == doctest::Approx(3.0 - 1.96 * s.se).epsilon(1e-14));
  const WelchResult w = welch_test(a, b);
  CHECK(w.t == doctest::Approx(-3.0 / std::sqrt(2.5)).epsilon(1e-12));
  CHECK(w.df == doctest::Approx(6.25 / 1.0625).epsilon(1e-12));
  CHECK(w.p_two_sided > 0.09);
  CHECK(w.p_two_sided < 0.13);
  CHECK(welch_test(a, a).p_two_sided == doctest::Approx(1.0));
  CHECK_THROWS_AS(summarize(std::span<const double>{}), InputError);
}
