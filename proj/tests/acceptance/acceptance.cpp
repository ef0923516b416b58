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

#include "oracles.hpp"

#include "ttdssp/analysis.hpp"
#include "ttdssp/array_core.hpp"
#include "ttdssp/codebook.hpp"
#include "ttdssp/errors.hpp"
#include "ttdssp/scenario.hpp"
#include "ttdssp/ttd_dsp.hpp"
#include "ttdssp/waveform.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <limits>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>

using namespace ttdssp;

namespace
{

struct Outcome
{
    bool pass = false;
    std::string detail;
};

std::string fmt(const char *f, double v)
{
    char buf[64];
    std::snprintf(buf, sizeof buf, f, v);
    return buf;
}

SamplerConfig sampler(double fs, double resolution_s = kDefaultDelayResolution)
{
    Scenario s;
    SamplerConfig c = s.sampler.config(fs, 1);
    c.delay_resolution_s = resolution_s;
    return c;
}

std::vector<double> linspace(double lo, double hi, std::size_t n)
{
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i)
        out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
    return out;
}

std::vector<double> degree_grid()
{
    std::vector<double> out;
    for (int d = -85; d <= 85; ++d)
        out.push_back(deg2rad(d));
    return out;
}

// Matched-tap tone gain at several steering angles across +-360 MHz.
Outcome flat_gain(std::size_t n)
{
    const ArrayConfig cfg = ArrayConfig::critical(n);
    const double fs = 2.0 * cfg.bandwidth_hz;
    const auto freqs = linspace(cfg.carrier_hz - 360e6, cfg.carrier_hz + 360e6, 73);
    const double ideal = 20.0 * std::log10(static_cast<double>(n));
    double lo = std::numeric_limits<double>::infinity();
    double hi = -lo;
    for (double deg : {-60.0, -20.0, 0.0, 40.0, 70.0})
    {
        const auto g = beamforming_gain(cfg, deg2rad(deg), freqs, sampler(fs), 8000);
        for (double v : g.gain_db)
        {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
    }
    const double dev = std::max(std::abs(hi - ideal), std::abs(lo - ideal));
    std::ostringstream d;
    d << "N=" << n << " gain " << fmt("%.3f", lo) << ".." << fmt("%.3f", hi) << " dB (ideal "
      << fmt("%.2f", ideal) << "), max deviation " << fmt("%.4f", dev) << " dB over 720 MHz, 5 angles";
    return {dev <= 0.1 && hi - lo <= 0.1, d.str()};
}

Outcome criterion1() { return flat_gain(4); }

Outcome criterion2()
{
    Outcome o = flat_gain(8);
    o.detail += "; gap to 16 dB hardware figure " + fmt("%.2f", 20.0 * std::log10(8.0) - 16.0) +
                " dB (unmodeled impairments)";
    return o;
}

Outcome criterion3()
{
    const ArrayConfig cfg = ArrayConfig::critical(4);
    const TapSet taps = training_taps(cfg, 1);
    const auto grid = degree_grid();

    // Integer argmax on a 240 kHz grid (4096 bins across the band).
    const OfdmPlan fine = OfdmPlan::for_band(cfg, 4096, 240e3, 0, 0);
    const Heatmap hm = heatmap(cfg, taps, fine, grid, sampler(fine.sample_rate_hz()));
    const auto arg = hm.row_argmax();
    const std::set<std::size_t> distinct(arg.begin(), arg.end());
    const bool injective = distinct.size() == arg.size();

    // End-to-end AoA on the default 960 kHz training grid.
    const OfdmPlan plan = OfdmPlan::for_band(cfg, 1024, 960e3, 0, 0);
    const SamplerConfig scfg = sampler(plan.sample_rate_hz());
    const AngleFrequencyMap map = build_map(cfg, taps, plan, grid);
    double worst = 0.0;
    for (double theta : grid)
    {
        const auto p = measure_training_response(cfg, taps, plan, {theta, std::nullopt, 1}, scfg, 2);
        const auto est = estimate_aoa(p, map);
        worst = std::max(worst, std::abs(rad2deg(est.theta_rad - theta)));
    }
    const auto collisions = integer_collisions(map);

    std::ostringstream d;
    d << "integer ridge argmax " << (injective ? "injective" : "NOT injective") << " (" << distinct.size() << "/"
      << arg.size() << " distinct bins, 4096 x 240 kHz); noiseless AoA max error " << fmt("%.2e", worst)
      << " deg over 171 angles (1024 x 960 kHz); info: " << collisions.size()
      << " integer-bin collisions at 960 kHz";
    return {injective && worst <= 1.0, d.str()};
}

Outcome criterion4()
{
    const ArrayConfig cfg = ArrayConfig::critical(4);
    const TapSet t = training_taps(cfg, 1);
    const double tau4 = t.delays_s.back();
    const TapSet q = quantize(t);
    bool exact = true;
    for (std::size_t n = 0; n < t.size(); ++n)
        exact = exact && std::abs(q.delays_s[n] - t.delays_s[n]) < 1e-18;

    // Brute force: quantized matched taps over angle and frequency.
    const auto freqs = linspace(cfg.band_low_hz(), cfg.band_high_hz(), 81);
    double ripple = 0.0;
    double deficit = 0.0;
    for (int i = -850; i <= 850; ++i)
    {
        const double theta = deg2rad(0.1 * i);
        const TapSet b = quantize(beamforming_taps(cfg, theta));
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (double f : freqs)
        {
            const double g = oracle::db(oracle::gain(cfg.spacing_m, cfg.carrier_hz, cfg.if_center_hz, b.delays_s,
                                                     b.phases_rad, theta, f));
            lo = std::min(lo, g);
            hi = std::max(hi, g);
        }
        ripple = std::max(ripple, hi - lo);
        deficit = std::max(deficit, 20.0 * std::log10(4.0) - lo);
    }
    std::ostringstream d;
    d << "tau_4 = " << fmt("%.4f", tau4 * 1e9) << " ns (range 3.8 ns), training taps on the 5 ps grid: "
      << (exact ? "yes" : "no") << "; quantized beamforming ripple max " << fmt("%.2e", ripple)
      << " dB, deficit max " << fmt("%.2e", deficit) << " dB (1701 angles x 81 freqs)";
    return {std::abs(tau4 - 3.75e-9) < 1e-15 && tau4 <= kDefaultDelayRange && exact && ripple < 0.5 &&
                deficit < 0.5,
            d.str()};
}

Outcome criterion5()
{
    const ArrayConfig cfg = ArrayConfig::critical(4);
    const unsigned m = training_interleave_levels(cfg, 1.6e9, 1);
    const ArrayConfig at_bw = ArrayConfig::critical(4, cfg.bandwidth_hz / 2.0, cfg.bandwidth_hz);
    std::ostringstream d;
    d << "delay-range sizing M = " << m << " (tau_max 3.75 ns, f_s 1.6 GHz); bracket rule (d/lambda 0.5, "
      << "sin 60 deg, N-1 = 3, BW/f_c = " << fmt("%.4f", cfg.bandwidth_hz / cfg.carrier_hz)
      << "): bracket " << fmt("%.4f", interleave_bracket(cfg)) << ", M = " << min_interleave_levels(cfg)
      << "; with f_c = BW/2: bracket " << fmt("%.4f", interleave_bracket(at_bw))
      << ", M = " << min_interleave_levels(at_bw);
    return {m == 7, d.str()};
}

Outcome criterion6()
{
    const double theta = deg2rad(60.0);
    const auto edge_loss = [&](std::size_t n, double bw) {
        ArrayConfig c = ArrayConfig::critical(n, 28e9, bw);
        return std::max(squint_loss(c, n, theta, c.band_low_hz()), squint_loss(c, n, theta, c.band_high_hz()));
    };
    bool rising_n = true;
    double prev = 0.0;
    std::ostringstream d;
    d << "edge loss vs N (800 MHz):";
    for (std::size_t n : {4u, 8u, 16u, 32u})
    {
        const double l = edge_loss(n, 800e6);
        rising_n = rising_n && l > prev;
        prev = l;
        d << " " << n << ":" << fmt("%.3f", l);
    }
    bool rising_bw = true;
    prev = 0.0;
    d << "; vs BW (N=16):";
    for (double bw : {200e6, 400e6, 800e6, 1600e6})
    {
        const double l = edge_loss(16, bw);
        rising_bw = rising_bw && l > prev;
        prev = l;
        d << " " << bw / 1e6 << ":" << fmt("%.3f", l);
    }
    const ArrayConfig cfg = ArrayConfig::critical(16);
    const TapSet ttd = beamforming_taps(cfg, theta);
    double ttd_loss = 0.0;
    for (double f : linspace(cfg.band_low_hz(), cfg.band_high_hz(), 401))
        ttd_loss = std::max(ttd_loss, 20.0 * std::log10(16.0) - pow2db(array_gain(cfg, ttd, theta, f)));
    d << " dB; TTD max loss " << fmt("%.2e", ttd_loss) << " dB";
    return {rising_n && rising_bw && ttd_loss < 0.01, d.str()};
}

Outcome criterion7()
{
    const ArrayConfig cfg = ArrayConfig::critical(4);
    const OfdmPlan plan = OfdmPlan::for_band(cfg, 1024, 960e3, 0, 512);
    const QamFrame frame = gen_qam(16, 20, plan, 11);
    ComplexVector ref;
    for (const auto &s : frame.symbols)
        ref.insert(ref.end(), s.begin(), s.end());

    std::ostringstream d;
    bool ok = ref.size() >= 10000;
    d << ref.size() << " symbols; AWGN EVM:";
    std::mt19937_64 rng(5);
    for (double snr : {10.0, 20.0, 30.0})
    {
        std::normal_distribution<double> gauss(0.0, std::sqrt(0.5 * db2pow(-snr)));
        ComplexVector rx = ref;
        for (auto &v : rx)
            v += cd{gauss(rng), gauss(rng)};
        const double got = evm(rx, ref).evm_rms_pct;
        const double law = 100.0 * std::pow(10.0, -snr / 20.0);
        const double rel = std::abs(got - law) / law;
        ok = ok && rel <= 0.10;
        d << " " << snr << " dB " << fmt("%.3f", got) << "% (law " << fmt("%.3f", law) << "%, "
          << fmt("%.1f", 100.0 * rel) << "% rel)";
    }

    const double theta = deg2rad(40.0);
    const MultichannelSignal rx = apply_channel(frame.stream, plan.sample_rate_hz(), cfg, {theta, std::nullopt, 11});
    const CombinedSignal comb = delay_and_combine(rx, beamforming_taps(cfg, theta), sampler(plan.sample_rate_hz()));
    const auto demod = ofdm_demodulate(plan, comb.samples, frame.symbols.size(),
                                       -static_cast<std::ptrdiff_t>(comb.latency_samples), plan.cp_len / 2);
    ComplexVector got;
    for (const auto &s : demod)
        got.insert(got.end(), s.begin(), s.end());
    const double pipe = evm(got, ref).evm_rms_pct;
    ok = ok && pipe < 1.0;
    d << "; noiseless 16-QAM pipeline (N=4, 40 deg) " << fmt("%.2e", pipe) << "%";
    return {ok, d.str()};
}

Outcome criterion8()
{
    SamplerConfig scfg = sampler(1.6e9);
    scfg.iip3_dbm = 14.0;
    const std::vector<double> levels = {-30.0, -25.0, -20.0};
    const auto sweep = two_tone_sweep(scfg, 766e6, 776e6, levels, 400e6);
    const Iip3Result r = extract_iip3(sweep, 766e6, 776e6);
    std::ostringstream d;
    d << "extracted IIP3 " << fmt("%.3f", r.iip3_dbm) << " dBm (configured 14), IM3 slope "
      << fmt("%.3f", r.im3_slope) << ", IM3 at 756/786 MHz " << fmt("%.2f", r.im3_dbm.front()) << " dBm at "
      << levels.front() << " dBm/tone";
    return {r.detected && std::abs(r.iip3_dbm - 14.0) <= 0.5 && !r.slope_warning, d.str()};
}

Outcome criterion9()
{
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const double fs = 1.6e9;
    const std::size_t n_samples = 16000;
    const double bin = fs / static_cast<double>(n_samples);
    const SamplerConfig scfg = sampler(fs, 0.0);

    double worst = 0.0;
    double worst_oracle = 0.0;
    for (int trial = 0; trial < 100; ++trial)
    {
        const std::size_t n = std::size_t{2} << (trial % 3);
        const ArrayConfig cfg = ArrayConfig::critical(n);
        const double theta = deg2rad(-85.0 + 170.0 * unit(rng));
        const double bb = std::floor(unit(rng) * (cfg.bandwidth_hz / bin)) * bin;
        const double f = cfg.to_rf(bb);
        TapSet taps;
        taps.mode = SspMode::Beamforming;
        for (std::size_t k = 0; k < n; ++k)
        {
            taps.delays_s.push_back(3.7e-9 * unit(rng));
            taps.phases_rad.push_back(2.0 * oracle::pi * unit(rng));
        }
        const double measured = pow2db(tone_gain(cfg, taps, theta, f, scfg, n_samples));
        const double freq[] = {f};
        const double analytic = pow2db(system_response(cfg, taps, theta, freq).front());
        const double indep = oracle::db(
            oracle::gain(cfg.spacing_m, cfg.carrier_hz, cfg.if_center_hz, taps.delays_s, taps.phases_rad, theta, f));
        worst = std::max(worst, std::abs(measured - analytic));
        worst_oracle = std::max(worst_oracle, std::abs(analytic - indep));
    }
    std::ostringstream d;
    d << "100 random (theta, f, taps) with N in {2,4,8}: max |tone gain - system_response| "
      << fmt("%.2e", worst) << " dB, analytic vs scalar oracle " << fmt("%.2e", worst_oracle) << " dB";
    return {worst <= 0.05 && worst_oracle <= 0.05, d.str()};
}

Outcome criterion10()
{
    std::ostringstream d;
    bool ok = true;
    double prev = std::numeric_limits<double>::infinity();
    double worst = 0.0;
    for (std::size_t n : {2u, 4u, 8u, 16u, 32u})
    {
        const ArrayConfig cfg = ArrayConfig::critical(n);
        const double w = hpbw(cfg, cfg.carrier_hz);
        const double ref = oracle::hpbw_grid(n, cfg.spacing_m, cfg.carrier_hz, 1e-5);
        ok = ok && w < prev;
        prev = w;
        worst = std::max(worst, std::abs(w - ref));
        d << "N=" << n << " " << fmt("%.4f", rad2deg(w)) << " deg; ";
    }
    d << "max |hpbw - grid oracle| " << fmt("%.2e", worst) << " rad";
    return {ok && worst <= 1e-3, d.str()};
}

} // namespace

int main()
{
    struct Criterion
    {
        int id;
        double budget_s;
        std::function<Outcome()> run;
    };
    const Criterion all[] = {{1, 10.0, criterion1}, {2, 10.0, criterion2}, {3, 120.0, criterion3},
                             {4, 10.0, criterion4}, {5, 1.0, criterion5},  {6, 30.0, criterion6},
                             {7, 60.0, criterion7}, {8, 30.0, criterion8}, {9, 60.0, criterion9},
                             {10, 30.0, criterion10}};
    int failures = 0;
    for (const auto &c : all)
    {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try
        {
            o = c.run();
        }
        catch (const std::exception &e)
        {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        const bool pass = o.pass && dt < c.budget_s;
        failures += !pass;
        std::printf("criterion %2d %s  %s [%.2f s, budget %.0f s]\n", c.id, pass ? "PASS" : "FAIL", o.detail.c_str(),
                    dt, c.budget_s);
    }
    std::printf("%d/10 criteria passed\n", 10 - failures);
    return failures == 0 ? 0 : 1;
}
