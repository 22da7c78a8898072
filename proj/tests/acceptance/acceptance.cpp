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

// Acceptance suite. Prints one PASS/FAIL line per criterion and exits
// nonzero if any criterion fails.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <numbers>
#include <string>
#include <vector>

#include "ibtom/agents.hpp"
#include "ibtom/game.hpp"
#include "ibtom/harness.hpp"
#include "ibtom/ibl.hpp"
#include "ibtom/report.hpp"
#include "ibtom/rng.hpp"
#include "ibtom/stats.hpp"
#include "oracle.hpp"

using namespace ibtom;

namespace {

// Coverage rate of asset 0 measured by the learning pilot (seed 4, 500 episodes).
constexpr double kLearningPilot = 0.862;
constexpr double kLearningBand = 0.05;

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

int failures = 0;

void report(int id, bool pass, const std::string& what, const std::string& detail, double secs,
            double budget) {
  const bool ok = pass && secs < budget;
  if (!ok) ++failures;
  std::printf("%s C%d %s: %s [%.2fs, budget %.0fs]\n", ok ? "PASS" : "FAIL", id, what.c_str(),
              detail.c_str(), secs, budget);
  std::fflush(stdout);
}

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

std::uint64_t fnv1a(const std::string& s) {
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

std::vector<AgentParams> defaults_of(std::initializer_list<ModelKind> kinds) {
  std::vector<AgentParams> out;
  for (auto k : kinds) out.push_back(AgentParams::defaults(k));
  return out;
}

void oracle_equivalence() {
  const Timer timer;
  RngStream g = split_stream(1, 0);
  int mismatches = 0;
  double worst = 0.0;
  for (int s = 0; s < 100; ++s) {
    InstanceStore store;
    std::vector<oracle::Trace> traces;
    const int k = 1 + static_cast<int>(sample_index(g, 4));
    Trial t = 0;
    for (int i = 0; i < k; ++i) {
      const double outcome = std::round(200.0 * sample_uniform01(g) - 100.0) + 0.25 * i;
      oracle::Trace tr{outcome, {}};
      const int reps = 1 + static_cast<int>(sample_index(g, 4));
      for (int r = 0; r < reps; ++r) {
        t += 1 + static_cast<Trial>(sample_index(g, 4));
        store.record({0, std::nullopt}, outcome, t);
        tr.times.push_back(t);
      }
      traces.push_back(tr);
    }
    const Trial now = t + 1 + static_cast<Trial>(sample_index(g, 4));
    IBLParams p;
    p.noise = 0.0;
    p.decay = 0.1 + 0.9 * sample_uniform01(g);
    p.temperature = 0.1 + 1.5 * sample_uniform01(g);
    RngStream unused = g.derive(static_cast<std::uint64_t>(s));
    const auto probs = retrieval_probs(store, {0, std::nullopt}, now, p, unused);
    const auto expected = oracle::retrieval(traces, now, p.decay, *p.temperature);
    for (std::size_t i = 0; i < probs.size(); ++i) {
      const double e = expected[i];
      const double diff = std::fabs(probs[i].probability - e);
      worst = std::max(worst, diff);
      if (diff > 1e-12) ++mismatches;
    }
    const double v = blended_value(store, {0, std::nullopt}, now, p, unused);
    const double o = oracle::blend(traces, now, p.decay, *p.temperature);
    const double diff = std::fabs(v - o) / std::max(1.0, std::fabs(o));
    worst = std::max(worst, diff);
    if (diff > 1e-12) ++mismatches;
  }

  // UCB focal agent over full seeded episodes, replayed against brute-force scores.
  const auto models = defaults_of({ModelKind::kUCB, ModelKind::kRandom, ModelKind::kIBL});
  const EpisodeConfig cfg;
  const auto res = run_pairings_serial(models, 10, cfg, 1, {.keep_traces = true});
  int ucb_checked = 0, ucb_bad = 0;
  std::vector<std::vector<double>> rewards;
  for (const auto& r : res.traces) {
    if (res.labels[r.group].first != "UCB") continue;
    if (r.trial == 1) rewards.assign(2, {});
    const AssetId chosen = r.focal_role == Role::kDefender ? r.defender_choice : r.attacker_choice;
    const auto scores = oracle::ucb_scores(rewards, 10.0);
    const double best = *std::max_element(scores.begin(), scores.end());
    if (scores[chosen] != best) ++ucb_bad;
    ++ucb_checked;
    rewards[chosen].push_back(r.focal_reward());
  }
  report(1, mismatches == 0 && ucb_bad == 0 && ucb_checked > 0, "oracle equivalence",
         fmt("100 stores, worst diff %.3g; UCB %d/%d choices argmax", worst,
             ucb_checked - ucb_bad, ucb_checked),
         timer.seconds(), 1.0);
}

void distributions() {
  const Timer timer;
  RngStream g = split_stream(2, 0);
  const int n = 1'000'000;
  double sum_v1 = 0.0, worst_total = 0.0;
  for (int i = 0; i < n; ++i) {
    const auto [a, b] = sample_asset_values(g, {3.0, 4.0}, 100.0);
    sum_v1 += a;
    worst_total = std::max(worst_total, std::fabs(a + b - 100.0));
  }
  const double mean_v1 = sum_v1 / n;
  double sum_beta = 0.0;
  for (int i = 0; i < n; ++i) sum_beta += sample_beta(g, 10.0, 10.0);
  const double mean_beta = sum_beta / n;
  const double sigma = 0.25;
  double s1 = 0.0, s2 = 0.0;
  for (int i = 0; i < n; ++i) {
    const double x = sample_activation_noise(g, sigma);
    s1 += x;
    s2 += x * x;
  }
  const double var = s2 / n - (s1 / n) * (s1 / n);
  const double var_target = sigma * sigma * std::numbers::pi * std::numbers::pi / 3.0;
  const bool ok = std::fabs(mean_v1 - 300.0 / 7.0) <= 0.3 && worst_total <= 1e-9 &&
                  std::fabs(mean_beta - 0.5) <= 0.005 &&
                  std::fabs(var / var_target - 1.0) <= 0.05;
  report(2, ok, "distributions",
         fmt("v1 mean %.3f (42.857), |v1+v2-100| <= %.1e, Beta(10,10) mean %.4f, noise var "
             "%.5f vs %.5f",
             mean_v1, worst_total, mean_beta, var, var_target),
         timer.seconds(), 5.0);
}

void random_calibration() {
  const Timer timer;
  EpisodeConfig cfg;
  cfg.first_role = Role::kDefender;
  cfg.switch_roles = false;
  Agent d(AgentParams::defaults(ModelKind::kRandom), Role::kDefender);
  Agent a(AgentParams::defaults(ModelKind::kRandom), Role::kAttacker);
  double sum = 0.0;
  long count = 0;
  for (std::uint32_t e = 0; e < 10'000; ++e) {
    for (const auto& r : run_episode(d, a, cfg, split_stream(3, e), e)) {
      sum += r.defender_reward;
      ++count;
    }
  }
  const double mean = sum / static_cast<double>(count);
  report(3, std::fabs(mean + 25.0) <= 1.0, "Random-vs-Random calibration",
         fmt("mean defender reward %.3f over 10^4 episodes (target -25 +/- 1)", mean),
         timer.seconds(), 10.0);
}

void learning_sanity() {
  const Timer timer;
  const AgentParams params = AgentParams::defaults(ModelKind::kIBL);
  const int episodes = 500;
  long covered = 0, total = 0;
  for (std::uint32_t e = 0; e < episodes; ++e) {
    const RngStream s = split_stream(4, e);
    RngStream values_stream = s.derive(0);
    RngStream decisions = s.derive(1);
    const AssetValues values = new_episode(values_stream);
    Agent d(params, Role::kDefender);
    for (Trial t = 1; t <= 50; ++t) {
      const AssetId cover = d.act(decisions);
      const Payoffs pay = resolve(values, {cover, 0});
      d.observe(cover, pay.defender, 0, pay.attacker, t);
      if (t >= 41) {
        covered += cover == 0 ? 1 : 0;
        ++total;
      }
    }
  }
  const double rate = static_cast<double>(covered) / static_cast<double>(total);
  const bool frozen = std::fabs(rate - kLearningPilot) <= kLearningBand;
  report(4, rate > 0.8 && frozen, "learning sanity",
         fmt("IBL covers attacked asset on %.3f of trials 41-50 (> 0.8; pilot %.3f +/- %.2f)",
             rate, kLearningPilot, kLearningBand),
         timer.seconds(), 60.0);
}

void ood_ordering() {
  const Timer timer;
  const auto trained = defaults_of({ModelKind::kIBToM, ModelKind::kIBL, ModelKind::kUCB});
  const auto population =
      defaults_of({ModelKind::kRandom, ModelKind::kUCB, ModelKind::kIBL, ModelKind::kIBToM});
  const EpisodeConfig cfg;
  int seeds_ok = 0;
  std::string detail;
  for (std::uint64_t seed : {1u, 2u, 3u}) {
    const OodResult res = run_ood(trained, population, 200, cfg, seed);
    const auto& ibtom = res.pooled[0].episode_rewards;
    bool ok = true;
    detail += fmt("seed %llu: IBToM %.3f", static_cast<unsigned long long>(seed),
                  summarize(ibtom).mean);
    for (std::size_t m = 1; m < 3; ++m) {
      const auto& other = res.pooled[m].episode_rewards;
      const Summary a = summarize(ibtom), b = summarize(other);
      const WelchResult w = welch_test(a, b);
      const bool separated = !ci95(a).overlaps(ci95(b)) || w.p_two_sided < 0.05;
      ok = ok && a.mean > b.mean && separated;
      detail += fmt(" %s %.3f (p=%.3f)", res.pooled[m].trained.c_str(), b.mean, w.p_two_sided);
    }
    detail += ok ? " ok; " : " no; ";
    seeds_ok += ok ? 1 : 0;
  }
  report(5, seeds_ok >= 2, "OOD ordering IBToM > IBL, UCB",
         fmt("%d/3 seeds separated; ", seeds_ok) + detail, timer.seconds(), 120.0);
}

void transfer_signal() {
  const Timer timer;
  const auto models = defaults_of({ModelKind::kIBToM, ModelKind::kIBL});
  const EpisodeConfig cfg;
  int positive = 0;
  std::string detail;
  for (std::uint64_t seed = 1; seed <= 5; ++seed) {
    const PairingsResult res = run_pairings(models, 1000, cfg, seed);
    double ibtom = 0.0, ibl = 0.0;
    for (const auto& row : res.rows) {
      if (row.trial < 51 || row.trial > 60) continue;
      if (row.pairing() == "IBToM-vs-IBToM") ibtom += row.stats.mean / 10.0;
      if (row.pairing() == "IBL-vs-IBL") ibl += row.stats.mean / 10.0;
    }
    positive += ibtom >= ibl ? 1 : 0;
    detail += fmt("seed %llu: %.2f vs %.2f; ", static_cast<unsigned long long>(seed), ibtom, ibl);
  }
  report(6, positive == 5, "transfer IBToM-vs-IBToM >= IBL-vs-IBL (trials 51-60)",
         fmt("%d/5 seeds; ", positive) + detail, timer.seconds(), 300.0);
}

void determinism() {
  const Timer timer;
  const auto models =
      defaults_of({ModelKind::kIBToM, ModelKind::kIBL, ModelKind::kUCB, ModelKind::kRandom});
  const EpisodeConfig cfg;
  const auto ser = run_pairings_serial(models, 100, cfg, 7);
  const auto par = run_pairings(models, 100, cfg, 7, {.threads = 4});
  const auto h_ser = fnv1a(summary_csv(ser.rows, Experiment::kPairings));
  const auto h_par = fnv1a(summary_csv(par.rows, Experiment::kPairings));
  report(7, h_ser == h_par && ser.rows.size() == 1600, "serial/parallel determinism",
         fmt("summary checksum serial %016llx parallel %016llx, %zu rows",
             static_cast<unsigned long long>(h_ser), static_cast<unsigned long long>(h_par),
             par.rows.size()),
         timer.seconds(), 60.0);
}

void properties() {
  const Timer timer;
  RngStream g = split_stream(8, 0);
  int bad = 0;
  for (int s = 0; s < 500; ++s) {
    InstanceStore store;
    std::vector<double> outcomes;
    Trial t = 0;
    const int k = 1 + static_cast<int>(sample_index(g, 6));
    for (int i = 0; i < k; ++i) {
      const double x = std::round(200.0 * sample_uniform01(g) - 100.0);
      t += 1 + static_cast<Trial>(sample_index(g, 3));
      store.record({0, std::nullopt}, x, t);
      outcomes.push_back(x);
    }
    IBLParams p;
    p.noise = 0.5 * sample_uniform01(g);
    p.decay = 0.1 + 0.9 * sample_uniform01(g);
    const auto probs = retrieval_probs(store, {0, std::nullopt}, t + 1, p, g);
    double sum = 0.0;
    for (const auto& r : probs) sum += r.probability;
    if (std::fabs(sum - 1.0) > 1e-9) ++bad;
    const double v = blended_value(store, {0, std::nullopt}, t + 1, p, g);
    const auto [lo, hi] = std::minmax_element(outcomes.begin(), outcomes.end());
    if (v < *lo - 1e-9 || v > *hi + 1e-9) ++bad;

    const std::vector<Trial> occ{t};
    if (!(base_activation(occ, t + 2, p.decay) < base_activation(occ, t + 1, p.decay))) ++bad;

    std::vector<double> vals{100.0 * sample_uniform01(g), 100.0 * sample_uniform01(g),
                             100.0 * sample_uniform01(g)};
    auto shifted = vals;
    for (double& x : shifted) x += 1e3 * (sample_uniform01(g) - 0.5);
    const auto pa = softmax_probs(vals, 0.05), pb = softmax_probs(shifted, 0.05);
    (void)pb;
    for (std::size_t i = 0; i < vals.size(); ++i) shifted[i] = vals[i] + 123.0;
    const auto pc = softmax_probs(shifted, 0.05);
    if (std::max_element(pa.begin(), pa.end()) - pa.begin() !=
        std::max_element(pc.begin(), pc.end()) - pc.begin()) {
      ++bad;
    }
    for (std::size_t i = 0; i < pa.size(); ++i) {
      if (std::fabs(pa[i] - pc[i]) > 1e-9) ++bad;
    }
  }
  for (int s = 0; s < 50; ++s) {
    Agent a(AgentParams::defaults(ModelKind::kIBToM), Role::kAttacker);
    for (Trial t = 1; t <= 20; ++t) {
      const double x = std::round(100.0 * sample_uniform01(g));
      a.observe(sample_index(g, 2), x, sample_index(g, 2), -x, t);
    }
    const auto self = a.self_store().dump(), opp = a.opp_store().dump();
    a.switch_role(TransferMode::kSwap);
    if (a.self_store().dump() != opp) ++bad;
    a.switch_role(TransferMode::kSwap);
    if (a.self_store().dump() != self || a.opp_store().dump() != opp) ++bad;
  }
  const auto models = defaults_of({ModelKind::kIBToM, ModelKind::kUCB});
  const auto res = run_pairings_serial(models, 20, EpisodeConfig{}, 8, {.keep_traces = true});
  for (const auto& r : res.traces) {
    if (r.defender_reward + r.attacker_reward != 0.0) ++bad;
  }
  report(8, bad == 0, "property suite",
         fmt("%d violations across normalization, bounds, recency, shift, swap, zero-sum", bad),
         timer.seconds(), 60.0);
}

}  // namespace

int main() {
  oracle_equivalence();
  distributions();
  random_calibration();
  learning_sanity();
  ood_ordering();
  transfer_signal();
  determinism();
  properties();
  std::printf("%s: %d criteria failed\n", failures == 0 ? "ALL PASS" : "FAILURES", failures);
  return failures == 0 ? 0 : 1;
}
