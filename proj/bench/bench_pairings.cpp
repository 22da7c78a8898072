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

// Serial reference vs OpenMP drivers on the same workload.

#include <benchmark/benchmark.h>

#include <vector>

#include "ibtom/agents.hpp"
#include "ibtom/harness.hpp"

namespace {

std::vector<ibtom::AgentParams> all_models() {
  using ibtom::ModelKind;
  std::vector<ibtom::AgentParams> m;
  for (auto k : {ModelKind::kIBToM, ModelKind::kIBL, ModelKind::kUCB, ModelKind::kRandom}) {
    m.push_back(ibtom::AgentParams::defaults(k));
  }
  return m;
}

void BM_PairingsSerial(benchmark::State& state) {
  const auto models = all_models();
  const ibtom::EpisodeConfig cfg;
  for (auto _ : state) {
    auto r = ibtom::run_pairings_serial(models, static_cast<int>(state.range(0)), cfg, 7);
    benchmark::DoNotOptimize(r.rows.data());
  }
  state.SetItemsProcessed(state.iterations() * 16 * state.range(0));
}

void BM_PairingsParallel(benchmark::State& state) {
  const auto models = all_models();
  const ibtom::EpisodeConfig cfg;
  const ibtom::RunOptions options{false, static_cast<int>(state.range(1))};
  for (auto _ : state) {
    auto r = ibtom::run_pairings(models, static_cast<int>(state.range(0)), cfg, 7, options);
    benchmark::DoNotOptimize(r.rows.data());
  }
  state.SetItemsProcessed(state.iterations() * 16 * state.range(0));
}

void BM_IbtomEpisode(benchmark::State& state) {
  const ibtom::EpisodeConfig cfg;
  ibtom::Agent focal(ibtom::AgentParams::defaults(ibtom::ModelKind::kIBToM), cfg.first_role);
  ibtom::Agent opponent(ibtom::AgentParams::defaults(ibtom::ModelKind::kIBToM),
                        ibtom::other(cfg.first_role));
  std::uint64_t i = 0;
  for (auto _ : state) {
    auto records = ibtom::run_episode(focal, opponent, cfg, ibtom::split_stream(1, i++));
    benchmark::DoNotOptimize(records.data());
  }
}

}  // namespace

BENCHMARK(BM_PairingsSerial)->Arg(50)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_PairingsParallel)->Args({50, 1})->Args({50, 2})->Args({50, 4})
    ->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(BM_IbtomEpisode)->Unit(benchmark::kMicrosecond);

BENCHMARK_MAIN();
