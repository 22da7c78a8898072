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

#include "ibtom/harness.hpp"

#include <algorithm>
#include <string>

#include <omp.h>

#include "ibtom/errors.hpp"

namespace ibtom {
namespace {

constexpr std::uint64_t kPairingTag = 1;
constexpr std::uint64_t kOodTag = 2;

void sort_rows(std::vector<SummaryRow>& rows) {
  std::stable_sort(rows.begin(), rows.end(), [](const SummaryRow& a, const SummaryRow& b) {
    const auto pa = a.pairing();
    const auto pb = b.pairing();
    if (pa != pb) return pa < pb;
    return a.trial < b.trial;
  });
}

}  // namespace

void EpisodeConfig::validate() const {
  if (trials_per_role < 1) throw ParameterError("trials_per_role must be at least 1");
  if (assets.alpha.size() < 2) throw ParameterError("need at least two assets");
  for (double a : assets.alpha) {
    if (!(a > 0.0)) throw ParameterError("asset alpha components must be positive");
  }
  if (!(assets.scale > 0.0)) throw ParameterError("asset scale must be positive");
}

std::vector<TrialRecord> run_episode(Agent& focal, Agent& opponent, const EpisodeConfig& cfg,
                                     const RngStream& stream, std::uint64_t episode_id,
                                     std::uint32_t group) {
  cfg.validate();
  const std::size_t n_assets = cfg.assets.alpha.size();
  if (focal.num_actions() != n_assets || opponent.num_actions() != n_assets) {
    throw ContractViolation("agent action count does not match the number of assets");
  }
  focal.reset();
  opponent.reset();
  if (focal.role() != cfg.first_role || opponent.role() != other(cfg.first_role)) {
    throw ContractViolation("agents do not hold the configured starting roles");
  }

  RngStream values_stream = stream.derive(0);
  RngStream focal_stream = stream.derive(1);
  RngStream opponent_stream = stream.derive(2);
  const AssetValues values = new_episode(values_stream, cfg.assets);

  const TransferMode focal_mode = cfg.focal_transfer.value_or(focal.transfer_mode());
  const TransferMode opp_mode = cfg.opponent_transfer.value_or(opponent.transfer_mode());

  std::vector<TrialRecord> records;
  records.reserve(static_cast<std::size_t>(cfg.total_trials()));
  for (Trial t = 1; t <= cfg.total_trials(); ++t) {
    if (cfg.switch_roles && t == cfg.trials_per_role + 1) {
      focal.switch_role(focal_mode);
      opponent.switch_role(opp_mode);
    }
    const AssetId focal_choice = focal.act(focal_stream);
    const AssetId opp_choice = opponent.act(opponent_stream);
    const bool focal_defends = focal.role() == Role::kDefender;
    const JointAction joint = focal_defends ? JointAction{focal_choice, opp_choice}
                                            : JointAction{opp_choice, focal_choice};
    const Payoffs pay = resolve(values, joint);
    const double focal_reward = pay.for_role(focal.role());
    const double opp_reward = pay.for_role(opponent.role());
    focal.observe(focal_choice, focal_reward, opp_choice, opp_reward, t);
    opponent.observe(opp_choice, opp_reward, focal_choice, focal_reward, t);

    TrialRecord rec;
    rec.episode = episode_id;
    rec.group = group;
    rec.trial = t;
    rec.focal_role = focal.role();
    rec.defender_choice = joint.defender;
    rec.attacker_choice = joint.attacker;
    rec.defender_reward = pay.defender;
    rec.attacker_reward = pay.attacker;
    rec.values = values.values();
    if (focal.kind() == ModelKind::kIBToM) rec.focal_prediction = focal.last_prediction();
    if (opponent.kind() == ModelKind::kIBToM) rec.opponent_prediction = opponent.last_prediction();
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<SummaryRow> aggregate(std::span<const TrialRecord> records,
                                  std::span<const std::pair<std::string, std::string>> labels) {
  if (records.empty()) throw InputError("aggregate: no records");
  struct Key {
    std::uint32_t group;
    Trial trial;
    Role role;
  };
  std::vector<Key> keys;
  std::vector<std::vector<double>> buckets;
  for (const auto& r : records) {
    if (r.group >= labels.size()) throw InputError("aggregate: record group has no label");
    auto it = std::find_if(keys.begin(), keys.end(), [&](const Key& k) {
      return k.group == r.group && k.trial == r.trial && k.role == r.focal_role;
    });
    if (it == keys.end()) {
      keys.push_back({r.group, r.trial, r.focal_role});
      buckets.emplace_back();
      it = keys.end() - 1;
    }
    buckets[static_cast<std::size_t>(it - keys.begin())].push_back(r.focal_reward());
  }
  std::vector<SummaryRow> rows;
  rows.reserve(keys.size());
  for (std::size_t i = 0; i < keys.size(); ++i) {
    const auto& [focal, opponent] = labels[keys[i].group];
    rows.push_back({focal, opponent, keys[i].trial, keys[i].role, summarize(buckets[i])});
  }
  sort_rows(rows);
  return rows;
}

std::uint64_t pairing_episode_id(std::uint32_t group, std::uint32_t pair) {
  return (kPairingTag << 56) | (static_cast<std::uint64_t>(group) << 32) | pair;
}

std::uint64_t ood_episode_id(std::uint32_t opponent_kind, std::uint32_t sample) {
  return (kOodTag << 56) | (static_cast<std::uint64_t>(opponent_kind) << 32) | sample;
}

AgentParams randomize_params(const AgentParams& base, RngStream& stream,
                             const Randomization& how) {
  AgentParams p = base;
  auto draw = [&](double theta) {
    return how.multiplier * theta * sample_beta(stream, how.beta_a, how.beta_b);
  };
  switch (base.kind) {
    case ModelKind::kRandom:
      break;
    case ModelKind::kIBL:
    case ModelKind::kIBToM:
      p.ibl.beta = draw(base.ibl.beta);
      p.ibl.noise = draw(base.ibl.noise);
      p.ibl.decay = draw(base.ibl.decay);
      break;
    case ModelKind::kUCB:
      p.ibl.beta = draw(base.ibl.beta);
      p.ucb_c = draw(base.ucb_c);
      break;
  }
  return p;
}

namespace detail {

void validate_run(std::span<const AgentParams> models, int count, const EpisodeConfig& cfg) {
  if (models.empty()) throw InputError("no models given");
  if (count < 1) throw InputError("episode count must be at least 1");
  cfg.validate();
  for (const auto& m : models) m.validate();
}

Role focal_role_at(const EpisodeConfig& cfg, Trial trial) {
  return cfg.switch_roles && trial > cfg.trials_per_role ? other(cfg.first_role)
                                                         : cfg.first_role;
}

std::vector<std::pair<std::string, std::string>> pairing_labels(
    std::span<const AgentParams> models) {
  std::vector<std::string> names;
  for (std::size_t i = 0; i < models.size(); ++i) {
    std::string name(to_string(models[i].kind));
    const auto dup = std::count_if(models.begin(), models.begin() + static_cast<long>(i),
                                   [&](const AgentParams& m) { return m.kind == models[i].kind; });
    if (dup > 0) name += "#" + std::to_string(dup + 1);
    names.push_back(std::move(name));
  }
  std::vector<std::pair<std::string, std::string>> labels;
  for (const auto& f : names) {
    for (const auto& o : names) labels.emplace_back(f, o);
  }
  return labels;
}

std::vector<TrialRecord> play_pairing_episode(std::span<const AgentParams> models,
                                              std::uint32_t group, std::uint32_t pair,
                                              const EpisodeConfig& cfg, std::uint64_t seed) {
  const std::size_t n = models.size();
  Agent focal(models[group / n], cfg.first_role, cfg.assets.alpha.size());
  Agent opponent(models[group % n], other(cfg.first_role), cfg.assets.alpha.size());
  const std::uint64_t id = pairing_episode_id(group, pair);
  return run_episode(focal, opponent, cfg, split_stream(seed, id), id, group);
}

EpisodeConfig ood_episode_config(const EpisodeConfig& cfg) {
  EpisodeConfig c = cfg;
  c.first_role = Role::kDefender;
  c.switch_roles = false;
  return c;
}

std::vector<TrialRecord> play_ood_episode(const AgentParams& trained,
                                          const AgentParams& opponent_base, std::uint32_t cell,
                                          std::uint32_t kind, std::uint32_t sample,
                                          const EpisodeConfig& cfg, std::uint64_t seed,
                                          const Randomization& how) {
  const EpisodeConfig c = ood_episode_config(cfg);
  const std::uint64_t id = ood_episode_id(kind, sample);
  const RngStream stream = split_stream(seed, id);
  RngStream param_stream = stream.derive(3);
  Agent focal(trained, Role::kDefender, c.assets.alpha.size());
  Agent opponent(randomize_params(opponent_base, param_stream, how), Role::kAttacker,
                 c.assets.alpha.size());
  return run_episode(focal, opponent, c, stream, id, cell);
}

double episode_reward(std::span<const TrialRecord> records, EpisodeReward reward) {
  double sum = 0.0;
  for (const auto& r : records) sum += r.focal_reward();
  if (reward == EpisodeReward::kSum || records.empty()) return sum;
  return sum / static_cast<double>(records.size());
}

std::vector<SummaryRow> summarize_pairings(
    std::span<const std::pair<std::string, std::string>> labels, int pairs,
    const EpisodeConfig& cfg, const std::vector<std::vector<double>>& focal_rewards) {
  const int trials = cfg.total_trials();
  std::vector<SummaryRow> rows;
  rows.reserve(labels.size() * static_cast<std::size_t>(trials));
  std::vector<double> column(static_cast<std::size_t>(pairs));
  for (std::size_t g = 0; g < labels.size(); ++g) {
    for (Trial t = 1; t <= trials; ++t) {
      for (int p = 0; p < pairs; ++p) {
        column[static_cast<std::size_t>(p)] =
            focal_rewards[g][static_cast<std::size_t>(p) * static_cast<std::size_t>(trials) +
                             static_cast<std::size_t>(t - 1)];
      }
      rows.push_back({labels[g].first, labels[g].second, t, focal_role_at(cfg, t),
                      summarize(column)});
    }
  }
  sort_rows(rows);
  return rows;
}

OodResult prepare_ood(std::span<const AgentParams> trained,
                      std::span<const AgentParams> population, int samples) {
  OodResult result;
  const auto n = static_cast<std::size_t>(samples);
  for (const auto& t : trained) {
    for (const auto& k : population) {
      result.cells.push_back(
          {std::string(to_string(t.kind)), std::string(to_string(k.kind)), std::vector<double>(n)});
    }
    result.pooled.push_back({std::string(to_string(t.kind)), "ALL", {}});
  }
  return result;
}

void finish_ood(OodResult& result) {
  const std::size_t kinds = result.cells.size() / result.pooled.size();
  for (std::size_t t = 0; t < result.pooled.size(); ++t) {
    auto& pooled = result.pooled[t].episode_rewards;
    pooled.clear();
    for (std::size_t k = 0; k < kinds; ++k) {
      const auto& cell = result.cells[t * kinds + k].episode_rewards;
      pooled.insert(pooled.end(), cell.begin(), cell.end());
    }
  }
  result.rows.clear();
  for (const auto* group : {&result.cells, &result.pooled}) {
    for (const auto& cell : *group) {
      result.rows.push_back(
          {cell.trained, cell.opponent, 0, Role::kDefender, summarize(cell.episode_rewards)});
    }
  }
  sort_rows(result.rows);
}

}  // namespace detail

PairingsResult run_pairings(std::span<const AgentParams> models, int pairs,
                            const EpisodeConfig& cfg, std::uint64_t seed,
                            const RunOptions& options) {
  detail::validate_run(models, pairs, cfg);
  PairingsResult result;
  result.labels = detail::pairing_labels(models);
  const auto groups = static_cast<long>(result.labels.size());
  const auto trials = static_cast<std::size_t>(cfg.total_trials());
  result.focal_rewards.assign(static_cast<std::size_t>(groups),
                              std::vector<double>(static_cast<std::size_t>(pairs) * trials));
  std::vector<std::vector<TrialRecord>> traces;
  if (options.keep_traces) traces.resize(static_cast<std::size_t>(groups * pairs));

  const long total = groups * pairs;
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
  for (long i = 0; i < total; ++i) {
    try {
      const auto g = static_cast<std::uint32_t>(i / pairs);
      const auto p = static_cast<std::uint32_t>(i % pairs);
      auto records = detail::play_pairing_episode(models, g, p, cfg, seed);
      auto& out = result.focal_rewards[g];
      for (std::size_t t = 0; t < records.size(); ++t) {
        out[p * trials + t] = records[t].focal_reward();
      }
      if (options.keep_traces) traces[static_cast<std::size_t>(i)] = std::move(records);
    } catch (...) {
#pragma omp critical(ibtom_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  result.rows = detail::summarize_pairings(result.labels, pairs, cfg, result.focal_rewards);
  for (auto& ep : traces) {
    std::move(ep.begin(), ep.end(), std::back_inserter(result.traces));
  }
  return result;
}

OodResult run_ood(std::span<const AgentParams> trained, std::span<const AgentParams> population,
                  int samples, const EpisodeConfig& cfg, std::uint64_t seed,
                  const RunOptions& options, const Randomization& how, EpisodeReward reward) {
  detail::validate_run(trained, samples, cfg);
  detail::validate_run(population, samples, cfg);
  OodResult result = detail::prepare_ood(trained, population, samples);
  const auto cells = static_cast<long>(result.cells.size());
  const auto kinds = static_cast<long>(population.size());
  std::vector<std::vector<TrialRecord>> traces;
  if (options.keep_traces) traces.resize(static_cast<std::size_t>(cells * samples));

  const long total = cells * samples;
  const int threads = options.threads > 0 ? options.threads : omp_get_max_threads();
  std::exception_ptr failure;
#pragma omp parallel for schedule(dynamic, 8) num_threads(threads)
  for (long i = 0; i < total; ++i) {
    try {
      const auto cell = static_cast<std::uint32_t>(i / samples);
      const auto s = static_cast<std::uint32_t>(i % samples);
      const auto t = static_cast<std::size_t>(cell / kinds);
      const auto k = static_cast<std::uint32_t>(cell % kinds);
      auto records =
          detail::play_ood_episode(trained[t], population[k], cell, k, s, cfg, seed, how);
      result.cells[cell].episode_rewards[s] = detail::episode_reward(records, reward);
      if (options.keep_traces) traces[static_cast<std::size_t>(i)] = std::move(records);
    } catch (...) {
#pragma omp critical(ibtom_failure)
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  detail::finish_ood(result);
  for (auto& ep : traces) {
    std::move(ep.begin(), ep.end(), std::back_inserter(result.traces));
  }
  return result;
}

}  // namespace ibtom
