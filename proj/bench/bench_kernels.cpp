// SPDX-License-Identifier: Apache-2.0
//
// ttdssp - behavioral simulator for true-time-delay array signal processing
// Copyright (C) 2026 The ttdssp authors
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

#include "ttdssp/analysis.hpp"
#include "ttdssp/array_core.hpp"
#include "ttdssp/codebook.hpp"
#include "ttdssp/reference.hpp"
#include "ttdssp/ttd_dsp.hpp"
#include "ttdssp/waveform.hpp"

#include <benchmark/benchmark.h>
#include <omp.h>

using namespace ttdssp;

namespace
{

std::vector<double> grid(double lo, double hi, std::size_t n)
{
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

SamplerConfig sampler(double fs)
{
    SamplerConfig s;
    s.plan.sample_rate_hz = fs;
    return s;
}

struct ResponseSetup
{
    ArrayConfig cfg = ArrayConfig::critical(16);
    TapSet taps = training_taps(cfg, 1);
    std::vector<double> thetas = grid(deg2rad(-85.0), deg2rad(85.0), 341);
    std::vector<double> freqs = grid(cfg.band_low_hz(), cfg.band_high_hz(), 833);
};

struct CombineSetup
{
    ArrayConfig cfg = ArrayConfig::critical(16);
    MultichannelSignal rx;
    TapSet taps;
    SamplerConfig scfg = sampler(1.6e9);

    CombineSetup()
    {
        const double theta = deg2rad(35.0);
        const auto chirp = gen_chirp(0.0, cfg.bandwidth_hz, 1.6e9, 1 << 15, cfg.if_center_hz);
        rx = apply_channel(chirp, 1.6e9, cfg, {theta, 20.0, 3});
        taps = beamforming_taps(cfg, theta);
    }
};

struct HeatmapSetup
{
    ArrayConfig cfg = ArrayConfig::critical(4);
    TapSet taps = training_taps(cfg, 1);
    OfdmPlan plan = OfdmPlan::for_band(cfg);
    std::vector<double> thetas = grid(deg2rad(-85.0), deg2rad(85.0), 171);
    SamplerConfig scfg = sampler(plan.sample_rate_hz());
};

void threads_arg(benchmark::internal::Benchmark *b)
{
    for (int t = 1; t <= omp_get_num_procs(); t *= 2)
        b->Arg(t);
}

void BM_response_grid_serial(benchmark::State &state)
{
    const ResponseSetup s;
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::response_grid(s.cfg, s.taps, s.thetas, s.freqs));
}

void BM_response_grid_omp(benchmark::State &state)
{
    const ResponseSetup s;
    omp_set_num_threads(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(response_grid(s.cfg, s.taps, s.thetas, s.freqs));
}

void BM_delay_and_combine_serial(benchmark::State &state)
{
    const CombineSetup s;
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::delay_and_combine(s.rx, s.taps, s.scfg));
}

void BM_delay_and_combine_omp(benchmark::State &state)
{
    const CombineSetup s;
    omp_set_num_threads(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(delay_and_combine(s.rx, s.taps, s.scfg));
}

void BM_heatmap_serial(benchmark::State &state)
{
    const HeatmapSetup s;
    for (auto _ : state)
        benchmark::DoNotOptimize(reference::heatmap(s.cfg, s.taps, s.plan, s.thetas, s.scfg));
}

void BM_heatmap_omp(benchmark::State &state)
{
    const HeatmapSetup s;
    omp_set_num_threads(static_cast<int>(state.range(0)));
    for (auto _ : state)
        benchmark::DoNotOptimize(heatmap(s.cfg, s.taps, s.plan, s.thetas, s.scfg));
}

} // namespace

BENCHMARK(BM_response_grid_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_response_grid_omp)->Apply(threads_arg)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_delay_and_combine_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_delay_and_combine_omp)->Apply(threads_arg)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_heatmap_serial)->Unit(benchmark::kMillisecond);
BENCHMARK(BM_heatmap_omp)->Apply(threads_arg)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
