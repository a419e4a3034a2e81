// Copyright 2026 The rcdp Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include <cmath>
#include <vector>

#include "benchmark/benchmark.h"
#include "rcdp/accountant.h"
#include "rcdp/erm.h"
#include "rcdp/oracle.h"
#include "rcdp/protocols.h"

namespace rcdp {
namespace {

void BM_FixedWindowBound(benchmark::State& state) {
  const LocalSpec spec{.epsilon0 = 0.8};
  const FixedWindowParams params{.n = 100000, .m = 1000, .p0 = 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(FixedWindowBound(spec, params));
  }
}
BENCHMARK(BM_FixedWindowBound);

void BM_ShuffleSweep(benchmark::State& state) {
  for (auto _ : state) {
    for (int k = 0; k < 60; ++k) {
      const LocalSpec spec{.epsilon0 = 0.05 * std::pow(60.0, k / 59.0)};
      benchmark::DoNotOptimize(ShuffleBoundNew(spec, 10000, 1e-6));
      benchmark::DoNotOptimize(ShuffleBoundOld(spec, 10000, 1e-6));
    }
  }
}
BENCHMARK(BM_ShuffleSweep);

void BM_KovComposition(benchmark::State& state) {
  const CompositionSchedule schedule{HetSchedule(1.0, 0.5, state.range(0))};
  for (auto _ : state) {
    benchmark::DoNotOptimize(KovComposition(schedule, 1e-6));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_KovComposition)->Range(16, 16384);

void BM_RunFixedSchedule(benchmark::State& state) {
  SimConfig config{.n_clients = state.range(0),
                   .n_slots = 100,
                   .p0 = 0.03};
  for (auto _ : state) {
    ++config.seed;
    benchmark::DoNotOptimize(RunFixed(config, nullptr, {}));
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunFixedSchedule)->Arg(1000)->Arg(10000)->Arg(100000);

void BM_RunFixedLogistic(benchmark::State& state) {
  const int64_t n = state.range(0);
  const ErmTask task = MakeLogisticTask(10, 1, 4, 1);
  Rng rng(2);
  const Dataset data = SampleDataset(task, n, rng);
  SimConfig config{.n_clients = n,
                   .n_slots = n / 10,
                   .p0 = 0.5,
                   .randomizer = {.clip_norm = 1,
                                  .noise_scale = 0.1,
                                  .dimension = 10},
                   .learning_rate = [](int64_t i) { return 0.3 / std::sqrt(i); },
                   .record_iterates = false};
  for (auto _ : state) {
    ++config.seed;
    benchmark::DoNotOptimize(RunFixed(config, &task, data));
  }
  state.SetItemsProcessed(state.iterations() * n);
}
BENCHMARK(BM_RunFixedLogistic)->Arg(1000)->Arg(10000);

void BM_EnumerateFixedLaw(benchmark::State& state) {
  const DiscreteMechanism rr = RandomizedResponse(1.0).value();
  const std::vector<int> data(static_cast<size_t>(state.range(0)), 1);
  const OracleParams params{.m = static_cast<int>(state.range(1)), .p0 = 0.5};
  for (auto _ : state) {
    benchmark::DoNotOptimize(EnumerateLaw(ProtocolId::kFixed, data, rr, params));
  }
}
BENCHMARK(BM_EnumerateFixedLaw)->Args({2, 2})->Args({3, 3})->Args({4, 3});

void BM_EnumerateShuffleLaw(benchmark::State& state) {
  const DiscreteMechanism rr = RandomizedResponse(1.0).value();
  std::vector<int> data(static_cast<size_t>(state.range(0)), 0);
  data[0] = 1;
  for (auto _ : state) {
    benchmark::DoNotOptimize(EnumerateLaw(ProtocolId::kShuffle, data, rr, {}));
  }
}
BENCHMARK(BM_EnumerateShuffleLaw)->DenseRange(2, 5);

}  // namespace
}  // namespace rcdp

BENCHMARK_MAIN();
