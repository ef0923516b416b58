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

#include "catch2/catch_amalgamated.hpp"

#include "ttdssp/analysis.hpp"
#include "ttdssp/reference.hpp"

#include <omp.h>

#include <random>

using namespace ttdssp;

namespace
{

// Restores the OpenMP team size on scope exit.
struct Threads
{
    int saved = omp_get_max_threads();
    explicit Threads(int n) { omp_set_num_threads(n); }
    ~Threads() { omp_set_num_threads(saved); }
};

std::vector<double> grid_deg(double a, double b, double step)
{
    std::vector<double> g;
    for (double d = a; d <= b + 1e-9; d += step)
        g.push_back(deg2rad(d));
    return g;
}

} // namespace

TEST_CASE("response grid matches the serial twin", "[parallel]")
{
    const auto cfg = ArrayConfig::critical(8);
    std::vector<double> freqs;
    for (int k = 0; k <= 400; ++k)
        freqs.push_back(cfg.band_low_hz() + cfg.bandwidth_hz * k / 400.0);
    const auto thetas = grid_deg(-89.0, 89.0, 0.5);
    for (const TapSet &taps : {training_taps(cfg), beamforming_taps(cfg, deg2rad(-33.0))})
    {
        const auto ref = reference::response_grid(cfg, taps, thetas, freqs);
        for (int t : {1, 3, 8})
        {
            Threads guard(t);
            const auto par = response_grid(cfg, taps, thetas, freqs);
            REQUIRE(par.size() == ref.size());
            for (std::size_t i = 0; i < ref.size(); ++i)
                CHECK(std::abs(par[i] - ref[i]) <= 1e-9 * 64.0);
        }
    }
}

TEST_CASE("combiner matches the serial twin", "[parallel]")
{
    const auto cfg = ArrayConfig::critical(4);
    const auto plan = OfdmPlan::for_band(cfg);
    const auto stim = gen_ofdm(plan, 3);
    SamplerConfig s;
    s.plan = InterleavePlan{7, plan.sample_rate_hz()};
    s.jitter_rms_s = 0.3e-12;
    s.iip3_dbm = 20.0;
    const auto rx = apply_channel(stim, plan.sample_rate_hz(), cfg, ChannelSpec{deg2rad(27.0), 15.0, 4});
    const auto taps = training_taps(cfg);
    const auto ref = reference::delay_and_combine(rx, taps, s);
    for (int t : {1, 2, 4})
    {
        Threads guard(t);
        const auto par = delay_and_combine(rx, taps, s);
        CHECK(par.latency_samples == ref.latency_samples);
        CHECK(par.applied_taps.delays_s == ref.applied_taps.delays_s);
        REQUIRE(par.samples.size() == ref.samples.size());
        for (std::size_t k = 0; k < ref.samples.size(); ++k)
            CHECK(std::abs(par.samples[k] - ref.samples[k]) <= 1e-12);
    }
}

TEST_CASE("parallel results do not depend on the team size", "[parallel]")
{
    const auto cfg = ArrayConfig::critical(4);
    const auto plan = OfdmPlan::for_band(cfg);
    const auto taps = training_taps(cfg);
    SamplerConfig s;
    s.plan = InterleavePlan{7, plan.sample_rate_hz()};
    const auto grid = grid_deg(-85.0, 85.0, 5.0);

    std::vector<double> one_db;
    std::vector<ComplexVector> one_rx;
    {
        Threads guard(1);
        one_db = heatmap(cfg, taps, plan, grid, s).db;
        one_rx = apply_channel(gen_ofdm(plan, 2), plan.sample_rate_hz(), cfg, ChannelSpec{0.4, 10.0, 3}).channels;
    }
    for (int t : {2, 5})
    {
        Threads guard(t);
        CHECK(heatmap(cfg, taps, plan, grid, s).db == one_db);
        CHECK(apply_channel(gen_ofdm(plan, 2), plan.sample_rate_hz(), cfg, ChannelSpec{0.4, 10.0, 3}).channels ==
              one_rx);
    }

    const auto ref = reference::heatmap(cfg, taps, plan, grid, s);
    REQUIRE(ref.db.size() == one_db.size());
    for (std::size_t i = 0; i < one_db.size(); ++i)
        CHECK(std::abs(ref.db[i] - one_db[i]) <= 1e-9);
}

TEST_CASE("monte carlo is reproducible across team sizes", "[parallel]")
{
    const auto cfg = ArrayConfig::critical(4);
    const auto plan = OfdmPlan::for_band(cfg);
    const auto taps = training_taps(cfg);
    SamplerConfig s;
    s.plan = InterleavePlan{7, plan.sample_rate_hz()};
    const auto map = build_map(cfg, taps, plan, grid_deg(-85.0, 85.0, 1.0));
    AoaTrialStats a, b;
    {
        Threads guard(1);
        a = aoa_monte_carlo(cfg, taps, plan, map, deg2rad(15.0), 5.0, 12, 99, s);
    }
    {
        Threads guard(4);
        b = aoa_monte_carlo(cfg, taps, plan, map, deg2rad(15.0), 5.0, 12, 99, s);
    }
    CHECK(a.detections == b.detections);
    CHECK(a.rms_error_rad == b.rms_error_rad);
    CHECK(a.max_error_rad == b.max_error_rad);
}
