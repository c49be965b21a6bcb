// SPDX-License-Identifier: Apache-2.0
//
// nomagee: energy-efficient beamforming for downlink MISO-NOMA systems
// Copyright (C) 2026 The nomagee authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
// http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.
// ------------------------------------------------------------------------

// Sweep throughput: serial reference against the OpenMP sweep, plus single designs.
#include <benchmark/benchmark.h>
#include <omp.h>

#include "nomagee/experiments.hpp"

using namespace nomagee;

namespace {

SweepSpec small_spec() {
    SweepSpec s;
    s.values = {0.0, 10.0, 20.0};
    s.algorithms = {Algorithm::sca, Algorithm::srm, Algorithm::zf};
    s.trials = 4;
    s.record_time = false;
    return s;
}

void BM_SweepSerial(benchmark::State &state) {
    const auto spec = small_spec();
    for (auto _ : state)
        benchmark::DoNotOptimize(run_sweep_serial(spec));
}
BENCHMARK(BM_SweepSerial)->Unit(benchmark::kMillisecond);

void BM_SweepParallel(benchmark::State &state) {
    const auto spec = small_spec();
    omp_set_num_threads(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_sweep(spec));
}
BENCHMARK(BM_SweepParallel)->Arg(1)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond)->UseRealTime();

void BM_Design(benchmark::State &state) {
    const auto algo = static_cast<Algorithm>(state.range(0));
    auto cfg = table1_config();
    cfg.p_ava = txsnr_to_budget(10.0, cfg.noise_var);
    cfg.seed = trial_seed(1, 0);
    const auto ch = generate_channels(cfg);
    state.SetLabel(to_string(algo));
    for (auto _ : state)
        benchmark::DoNotOptimize(run_design(algo, ch, cfg));
}
BENCHMARK(BM_Design)
    ->Arg(static_cast<int>(Algorithm::sca))
    ->Arg(static_cast<int>(Algorithm::dinkelbach))
    ->Arg(static_cast<int>(Algorithm::pmin))
    ->Arg(static_cast<int>(Algorithm::srm))
    ->Arg(static_cast<int>(Algorithm::zf))
    ->Unit(benchmark::kMillisecond);

} // namespace

BENCHMARK_MAIN();
