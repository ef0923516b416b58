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

#include "ttdssp/reference.hpp"

#include "ttdssp/errors.hpp"
#include "ttdssp/fft.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace ttdssp::reference
{

std::vector<double> response_grid(const ArrayConfig &cfg, const TapSet &taps, std::span<const double> thetas,
                                  std::span<const double> freqs)
{
    cfg.validate();
    if (taps.size() != cfg.n_elements || taps.phases_rad.size() != cfg.n_elements)
        throw ConfigError("tap set does not match the array size");
    const double slack = 1e-9 * cfg.bandwidth_hz;
    std::vector<double> out;
    out.reserve(thetas.size() * freqs.size());
    for (double theta : thetas)
        for (double f : freqs)
        {
            if (f < cfg.band_low_hz() - slack || f > cfg.band_high_hz() + slack)
                throw ConfigError("frequency outside the array band");
            const ComplexVector a = steering_vector(cfg, theta, f);
            const double fbb = cfg.to_baseband(f);
            cd acc{};
            for (std::size_t n = 0; n < cfg.n_elements; ++n)
            {
                const cd w = std::polar(1.0, -(kTwoPi * fbb * taps.delays_s[n] + taps.phases_rad[n]));
                acc += std::conj(w) * a[n];
            }
            out.push_back(std::norm(acc));
        }
    return out;
}

CombinedSignal delay_and_combine(const MultichannelSignal &signal, const TapSet &taps, const SamplerConfig &scfg)
{
    signal.validate();
    scfg.validate();
    if (taps.size() != signal.n_channels() || taps.phases_rad.size() != signal.n_channels())
        throw ConfigError("tap set does not match the channel count");
    const double fs = scfg.plan.sample_rate_hz;
    if (std::abs(signal.sample_rate_hz - fs) > 1e-9 * fs)
        throw ConfigError("signal sample rate differs from sampler rate");

    CombinedSignal out;
    out.sample_rate_hz = fs;
    out.center_hz = signal.center_hz;
    out.applied_taps = realize_taps(taps, scfg);

    std::vector<std::size_t> shifts;
    for (double tau : out.applied_taps.delays_s)
        shifts.push_back(static_cast<std::size_t>(std::floor(tau * fs + 1e-9)));
    const std::size_t latency = *std::max_element(shifts.begin(), shifts.end());
    const std::size_t len = signal.length();
    if (latency >= len)
        throw ConfigError("stream shorter than the combiner latency");
    out.latency_samples = latency;
    out.samples.assign(len - latency, cd{});

    for (std::size_t n = 0; n < signal.n_channels(); ++n)
    {
        ComplexVector z = apply_jitter(signal.channels[n], fs, signal.center_hz, scfg.jitter_rms_s,
                                       scfg.jitter_seed * 1000003u + n);
        const double frac = out.applied_taps.delays_s[n] - static_cast<double>(shifts[n]) / fs;
        if (frac != 0.0)
            z = fft::circular_delay(z, frac, fs, signal.center_hz);
        const cd rot = std::polar(1.0, -out.applied_taps.phases_rad[n]);
        for (auto &v : z)
            v *= rot;
        auto nl = apply_nonlinearity(z, scfg.iip3_dbm, scfg.reference_impedance_ohm);
        out.nonlinearity_warning = out.nonlinearity_warning || nl.warning;
        const std::size_t lead = latency - shifts[n];
        for (std::size_t j = 0; j < out.samples.size(); ++j)
            out.samples[j] += nl.samples[j + lead];
    }
    return out;
}

Heatmap heatmap(const ArrayConfig &cfg, const TapSet &taps, const OfdmPlan &plan, std::span<const double> theta_grid,
                const SamplerConfig &scfg, std::size_t n_symbols)
{
    Heatmap hm;
    hm.angles_rad.assign(theta_grid.begin(), theta_grid.end());
    for (auto b : plan.active_bins())
        hm.subcarrier_freq_hz.push_back(plan.bin_frequency_hz(b));

    SamplerConfig s = scfg;
    s.plan.sample_rate_hz = plan.sample_rate_hz();
    OfdmPlan burst = plan;
    burst.cp_len = 0;
    const auto stim = gen_ofdm(burst, n_symbols);
    for (double theta : theta_grid)
    {
        const auto sig = apply_channel(stim, plan.sample_rate_hz(), cfg, {theta, std::nullopt, 1});
        const auto comb = reference::delay_and_combine(sig, taps, s);
        const auto p = subcarrier_power(comb.samples, burst, -static_cast<std::ptrdiff_t>(comb.latency_samples));
        for (double v : p)
            hm.db.push_back(pow2db(std::max(v, 1e-30)));
    }
    return hm;
}

} // namespace ttdssp::reference
