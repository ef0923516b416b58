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

#include "oracles.hpp"

#include "ttdssp/errors.hpp"
#include "ttdssp/ttd_dsp.hpp"
#include "ttdssp/waveform.hpp"

#include <random>

using namespace ttdssp;
using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;

namespace
{

constexpr double kFs = 1.6e9;
constexpr std::size_t kLen = 1600; // 1 MHz bins

SamplerConfig exact_sampler(double fs = kFs)
{
    SamplerConfig s;
    s.plan = InterleavePlan{7, fs};
    s.delay_resolution_s = 0.0;
    return s;
}

MultichannelSignal replicate(const ComplexVector &x, std::size_t n, double fs, double center)
{
    MultichannelSignal sig;
    sig.sample_rate_hz = fs;
    sig.center_hz = center;
    sig.channels.assign(n, x);
    return sig;
}

// Combined power over single-element power for a baseband tone on a bin.
double measured_gain(const ArrayConfig &cfg, const TapSet &taps, double theta, double f_bb, const SamplerConfig &s)
{
    const auto tone = gen_tone(f_bb, kFs, kLen, cfg.if_center_hz);
    const auto sig = apply_channel(tone, kFs, cfg, ChannelSpec{theta, {}, 1});
    const auto out = delay_and_combine(sig, taps, s);
    return mean_power(out.samples) / mean_power(tone);
}

} // namespace

TEST_CASE("combiner identities", "[ttd_dsp]")
{
    std::mt19937_64 rng(1);
    std::normal_distribution<double> g(0.0, 1.0);
    ComplexVector x(kLen);
    for (auto &v : x)
        v = {g(rng), g(rng)};

    SECTION("single element with zero taps is the identity")
    {
        TapSet t;
        t.delays_s = {0.0};
        t.phases_rad = {0.0};
        const auto out = delay_and_combine(replicate(x, 1, kFs, 0.0), t, exact_sampler());
        REQUIRE(out.samples.size() == x.size());
        CHECK(out.latency_samples == 0);
        for (std::size_t k = 0; k < x.size(); ++k)
            CHECK(std::abs(out.samples[k] - x[k]) < 1e-15);
    }
    SECTION("equal whole-sample taps give N times the delayed input")
    {
        for (std::size_t k : {1u, 3u, 6u})
        {
            TapSet t;
            t.delays_s.assign(4, static_cast<double>(k) / kFs);
            t.phases_rad.assign(4, 0.0);
            const auto out = delay_and_combine(replicate(x, 4, kFs, 0.0), t, exact_sampler());
            CHECK(out.latency_samples == k);
            REQUIRE(out.samples.size() == x.size() - k);
            for (std::size_t j = 0; j < out.samples.size(); ++j)
                CHECK(std::abs(out.samples[j] - 4.0 * x[j]) < 1e-12);
        }
    }
    SECTION("latency equals the largest whole-sample shift")
    {
        TapSet t;
        t.delays_s = {0.0, 1.3 / kFs, 4.7 / kFs, 2.0 / kFs};
        t.phases_rad.assign(4, 0.0);
        const auto out = delay_and_combine(replicate(x, 4, kFs, 0.0), t, exact_sampler());
        CHECK(out.latency_samples == 4);
        CHECK(out.samples.size() == x.size() - 4);
    }
    SECTION("output power bound")
    {
        TapSet t;
        t.delays_s = {0.0, 0.5e-9, 1.0e-9, 1.5e-9};
        t.phases_rad = {0.0, 0.3, 1.1, 2.0};
        const auto out = delay_and_combine(replicate(x, 4, kFs, 0.0), t, exact_sampler());
        CHECK(mean_power(out.samples) <= 16.0 * mean_power(x));
    }
}

TEST_CASE("combiner is linear", "[ttd_dsp]")
{
    std::mt19937_64 rng(2);
    std::normal_distribution<double> g(0.0, 1.0);
    auto random_sig = [&] {
        MultichannelSignal s;
        s.sample_rate_hz = kFs;
        s.center_hz = 400e6;
        s.channels.assign(4, ComplexVector(512));
        for (auto &ch : s.channels)
            for (auto &v : ch)
                v = {g(rng), g(rng)};
        return s;
    };
    const auto x = random_sig();
    const auto y = random_sig();
    const cd a{0.7, -1.2}, b{-2.0, 0.4};
    MultichannelSignal mix = x;
    for (std::size_t n = 0; n < 4; ++n)
        for (std::size_t k = 0; k < 512; ++k)
            mix.channels[n][k] = a * x.channels[n][k] + b * y.channels[n][k];

    const auto taps = training_taps(ArrayConfig::critical(4));
    SamplerConfig s;
    s.plan = InterleavePlan{7, kFs};
    const auto cx = delay_and_combine(x, taps, s);
    const auto cy = delay_and_combine(y, taps, s);
    const auto cm = delay_and_combine(mix, taps, s);
    double scale = 0.0;
    for (auto v : cm.samples)
        scale = std::max(scale, std::abs(v));
    for (std::size_t k = 0; k < cm.samples.size(); ++k)
        CHECK(std::abs(cm.samples[k] - (a * cx.samples[k] + b * cy.samples[k])) <= 1e-9 * scale);
}

TEST_CASE("matched tone gain", "[ttd_dsp]")
{
    const auto cfg = ArrayConfig::critical(4);
    for (double deg : {-50.0, 0.0, 30.0, 75.0})
    {
        const double theta = deg2rad(deg);
        const auto taps = beamforming_taps(cfg, theta);
        for (double f_bb : {40e6, 400e6, 760e6})
        {
            const double g = measured_gain(cfg, taps, theta, f_bb, exact_sampler());
            CHECK_THAT(oracle::db(g), WithinAbs(20.0 * std::log10(4.0), 1e-9));
        }
    }
}

TEST_CASE("combined tone gain equals the analytic response", "[ttd_dsp]")
{
    std::mt19937_64 rng(21);
    std::uniform_real_distribution<double> th(-kPi / 2, kPi / 2), tau(0.0, 3.7e-9), ph(0.0, kTwoPi);
    std::uniform_int_distribution<int> bin(0, 799);
    for (int trial = 0; trial < 25; ++trial)
    {
        const auto cfg = ArrayConfig::critical(4);
        TapSet t;
        for (int n = 0; n < 4; ++n)
        {
            t.delays_s.push_back(tau(rng));
            t.phases_rad.push_back(ph(rng));
        }
        const double theta = th(rng);
        const double f_bb = 1e6 * bin(rng);
        const double g = measured_gain(cfg, t, theta, f_bb, exact_sampler());
        const double ref =
            oracle::gain(cfg.spacing_m, cfg.carrier_hz, cfg.if_center_hz, t.delays_s, t.phases_rad, theta,
                         cfg.to_rf(f_bb));
        if (ref > 1e-3)
            CHECK_THAT(oracle::db(g), WithinAbs(oracle::db(ref), 0.05));
        else
            CHECK(g < 2e-3);
    }
}

TEST_CASE("delay quantization ceiling", "[ttd_dsp]")
{
    const auto cfg = ArrayConfig::critical(4);
    SamplerConfig s;
    s.plan = InterleavePlan{7, kFs};
    const double e = kTwoPi * cfg.bandwidth_hz * (s.delay_resolution_s / 2.0);
    const double bound_db = -20.0 * std::log10(std::cos(e));
    for (double deg = -80.0; deg <= 80.0; deg += 10.0)
    {
        const double theta = deg2rad(deg);
        const auto taps = beamforming_taps(cfg, theta);
        for (double f_bb : {0.0, 250e6, 799e6})
        {
            const double g = oracle::db(measured_gain(cfg, taps, theta, f_bb, s));
            CHECK(g <= oracle::db(16.0) + 1e-9);
            CHECK(oracle::db(16.0) - g <= bound_db + 1e-9);
        }
    }
}

TEST_CASE("combiner errors", "[ttd_dsp]")
{
    const auto x = gen_tone(0.0, kFs, 64);
    TapSet t;
    t.delays_s = {0.0, 4.0e-9};
    t.phases_rad = {0.0, 0.0};
    SamplerConfig s;
    s.plan = InterleavePlan{7, kFs};
    try
    {
        delay_and_combine(replicate(x, 2, kFs, 0.0), t, s);
        FAIL("expected a sizing error");
    }
    catch (const SizingError &err)
    {
        CHECK(err.element() == 1);
    }

    t.delays_s = {0.0, 3.0e-9};
    s.plan = InterleavePlan{3, kFs}; // span 1.25 ns
    CHECK_THROWS_AS(delay_and_combine(replicate(x, 2, kFs, 0.0), t, s), SizingError);

    s.plan = InterleavePlan{7, kFs};
    CHECK_THROWS_AS(delay_and_combine(replicate(x, 2, 1.0e9, 0.0), t, s), ConfigError);
    CHECK_THROWS_AS(delay_and_combine(replicate(x, 3, kFs, 0.0), t, s), ConfigError);
}

TEST_CASE("third-order nonlinearity", "[ttd_dsp]")
{
    const auto x = gen_two_tone(766e6, 776e6, kFs, kLen, 400e6);

    SECTION("linear when no intercept is configured")
    {
        const auto y = apply_nonlinearity(x, std::nullopt);
        CHECK(y.samples == x);
        CHECK_FALSE(y.warning);
    }
    SECTION("intermodulation follows the cubic law")
    {
        // Per-tone amplitude for -20 dBm; gen_two_tone has unit total power.
        const double a = dbm_to_amplitude(-20.0) * std::sqrt(2.0);
        ComplexVector in(x.size());
        for (std::size_t k = 0; k < x.size(); ++k)
            in[k] = a * x[k];
        CHECK_THAT(oracle::db(oracle::tone_power({in.begin(), in.end()}, 766e6, kFs)),
                   WithinAbs(-20.0, 1e-9));
        const auto y = apply_nonlinearity(in, 14.0);
        CHECK_FALSE(y.warning);
        const std::vector<oracle::cplx> out(y.samples.begin(), y.samples.end());
        for (double f : {756e6, 786e6})
        {
            const double im3 = oracle::db(oracle::tone_power(out, f, kFs));
            CHECK_THAT(im3, WithinAbs(-20.0 - 2.0 * (14.0 - (-20.0)), 0.01));
        }
        const double fund = oracle::db(oracle::tone_power(out, 766e6, kFs));
        const double im3 = oracle::db(oracle::tone_power(out, 756e6, kFs));
        CHECK_THAT(-20.0 + (fund - im3) / 2.0, WithinAbs(14.0, 0.5));
    }
    SECTION("warning near the intercept")
    {
        ComplexVector in(x.size());
        for (std::size_t k = 0; k < x.size(); ++k)
            in[k] = dbm_to_amplitude(8.0) * x[k];
        CHECK(apply_nonlinearity(in, 14.0).warning);
    }
    SECTION("dBm conversions")
    {
        CHECK_THAT(dbm_to_amplitude(0.0), WithinAbs(1.0, 1e-15));
        CHECK_THAT(amplitude_to_dbm(dbm_to_amplitude(-37.5)), WithinAbs(-37.5, 1e-12));
        CHECK_THAT(volts_per_unit(50.0), WithinRel(std::sqrt(0.1), 1e-12));
    }
}

TEST_CASE("sampler jitter", "[ttd_dsp]")
{
    const double fs = kFs;
    const std::size_t n = 1 << 16;
    const double f0 = 390.625e6; // on a bin of the 2^16 grid
    const auto tone = gen_tone(f0, fs, n);

    CHECK(apply_jitter(tone, fs, 0.0, 0.0, 1) == tone);

    auto snr_db = [&](double sigma) {
        const auto y = apply_jitter(tone, fs, 0.0, sigma, 3);
        ComplexVector e(n);
        for (std::size_t k = 0; k < n; ++k)
            e[k] = y[k] - tone[k];
        return oracle::db(mean_power(tone) / mean_power(e));
    };
    for (double sigma : {0.2e-12, 1e-12})
    {
        const double expected = -20.0 * std::log10(kTwoPi * f0 * sigma);
        CHECK_THAT(snr_db(sigma), WithinAbs(expected, 0.1));
    }
    CHECK_THAT(snr_db(1e-12) - snr_db(2e-12), WithinAbs(6.02, 0.1));
}

TEST_CASE("sampler validation", "[ttd_dsp]")
{
    SamplerConfig s;
    CHECK_NOTHROW(s.validate());
    s.plan.levels = 0;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = SamplerConfig{};
    s.jitter_rms_s = -1.0;
    CHECK_THROWS_AS(s.validate(), ConfigError);
    s = SamplerConfig{};
    s.iip3_dbm = std::numeric_limits<double>::infinity();
    CHECK_THROWS_AS(s.validate(), ConfigError);
}
