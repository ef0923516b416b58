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

#include "ttdssp/ttd_dsp.hpp"

#include "ttdssp/errors.hpp"
#include "ttdssp/fft.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace ttdssp
{

void SamplerConfig::validate() const
{
    if (plan.levels < 1)
        throw ConfigError("sampler.levels must be >= 1");
    if (!(plan.sample_rate_hz > 0.0))
        throw ConfigError("sampler.sample_rate must be > 0");
    if (delay_resolution_s < 0.0)
        throw ConfigError("sampler.delay_resolution must be >= 0");
    if (!(delay_range_s > 0.0))
        throw ConfigError("sampler.delay_range must be > 0");
    if (jitter_rms_s < 0.0)
        throw ConfigError("sampler.jitter_rms must be >= 0");
    if (iip3_dbm && !std::isfinite(*iip3_dbm))
        throw ConfigError("sampler.iip3_dbm must be finite");
    if (!(reference_impedance_ohm > 0.0))
        throw ConfigError("sampler.reference_impedance must be > 0");
}

TapSet realize_taps(const TapSet &taps, const SamplerConfig &scfg)
{
    TapSet out = taps;
    if (scfg.delay_resolution_s > 0.0)
        out = quantize(taps, scfg.delay_resolution_s, scfg.delay_range_s);

    const double span = scfg.plan.span_s();
    for (std::size_t n = 0; n < out.delays_s.size(); ++n)
    {
        const double tau = out.delays_s[n];
        std::ostringstream msg;
        if (tau < 0.0)
            msg << "element " << n << " has a negative delay";
        else if (tau > scfg.delay_range_s + 5e-16)
            msg << "element " << n << " delay " << tau * 1e9 << " ns exceeds delay range " << scfg.delay_range_s * 1e9
                << " ns";
        else if (tau > span + 5e-16)
            msg << "element " << n << " delay " << tau * 1e9 << " ns exceeds the " << scfg.plan.levels
                << "-level interleave span " << span * 1e9 << " ns";
        if (!msg.str().empty())
            throw SizingError(msg.str(), n);
    }
    return out;
}

double dbm_to_amplitude(double dbm)
{
    return std::pow(10.0, dbm / 20.0);
}

double amplitude_to_dbm(double amplitude)
{
    return 20.0 * std::log10(amplitude);
}

double volts_per_unit(double impedance_ohm)
{
    return std::sqrt(2.0 * impedance_ohm * 1e-3);
}

NonlinearOutput apply_nonlinearity(std::span<const cd> x, std::optional<double> iip3_dbm, double impedance_ohm)
{
    if (!(impedance_ohm > 0.0))
        throw ConfigError("reference impedance must be > 0");
    NonlinearOutput out;
    out.samples.assign(x.begin(), x.end());
    if (!iip3_dbm)
        return out;
    const double a2 = std::pow(dbm_to_amplitude(*iip3_dbm), 2);
    for (auto &v : out.samples)
        v -= v * std::norm(v) / a2;
    out.warning = pow2db(mean_power(x)) > *iip3_dbm - 10.0;
    return out;
}

ComplexVector apply_jitter(std::span<const cd> x, double sample_rate_hz, double center_hz, double jitter_rms_s,
                           std::uint64_t seed)
{
    ComplexVector y(x.begin(), x.end());
    if (jitter_rms_s == 0.0 || x.empty())
        return y;
    const ComplexVector dx = fft::derivative(x, sample_rate_hz, center_hz);
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss(0.0, jitter_rms_s);
    for (std::size_t k = 0; k < y.size(); ++k)
        y[k] += gauss(rng) * dx[k];
    return y;
}

namespace
{

struct Stage
{
    ComplexVector samples;
    std::size_t shift = 0;
    bool warning = false;
};

Stage element_stage(const ComplexVector &x, double tau, double phase, const SamplerConfig &scfg, double center_hz,
                    std::size_t element)
{
    const double fs = scfg.plan.sample_rate_hz;
    Stage st;
    // 1e-9 sample of slack keeps exact multiples of 1/fs from flooring down.
    st.shift = static_cast<std::size_t>(std::floor(tau * fs + 1e-9));
    const double frac = tau - static_cast<double>(st.shift) / fs;

    ComplexVector z = scfg.jitter_rms_s > 0.0
                          ? apply_jitter(x, fs, center_hz, scfg.jitter_rms_s, scfg.jitter_seed * 1000003u + element)
                          : x;
    if (std::abs(frac) > 0.0)
        z = fft::circular_delay(z, frac, fs, center_hz);
    const cd rot = std::polar(1.0, -phase);
    for (auto &v : z)
        v *= rot;
    if (scfg.iip3_dbm)
    {
        NonlinearOutput nl = apply_nonlinearity(z, scfg.iip3_dbm, scfg.reference_impedance_ohm);
        z = std::move(nl.samples);
        st.warning = nl.warning;
    }
    st.samples = std::move(z);
    return st;
}

} // namespace

CombinedSignal delay_and_combine(const MultichannelSignal &signal, const TapSet &taps, const SamplerConfig &scfg)
{
    signal.validate();
    scfg.validate();
    if (taps.size() != signal.n_channels() || taps.phases_rad.size() != signal.n_channels())
        throw ConfigError("tap set sized for " + std::to_string(taps.size()) + " elements, signal has " +
                          std::to_string(signal.n_channels()));
    const double fs = scfg.plan.sample_rate_hz;
    if (std::abs(signal.sample_rate_hz - fs) > 1e-9 * fs)
        throw ConfigError("signal sample rate differs from sampler rate");

    CombinedSignal out;
    out.sample_rate_hz = fs;
    out.center_hz = signal.center_hz;
    out.applied_taps = realize_taps(taps, scfg);

    const std::ptrdiff_t n_el = static_cast<std::ptrdiff_t>(signal.n_channels());
    std::vector<Stage> stages(signal.n_channels());

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t n = 0; n < n_el; ++n)
    {
        const auto u = static_cast<std::size_t>(n);
        stages[u] = element_stage(signal.channels[u], out.applied_taps.delays_s[u], out.applied_taps.phases_rad[u],
                                  scfg, signal.center_hz, u);
    }

    std::size_t latency = 0;
    for (const auto &st : stages)
        latency = std::max(latency, st.shift);
    const std::size_t len = signal.length();
    if (latency >= len)
        throw ConfigError("stream shorter than the combiner latency");

    out.latency_samples = latency;
    out.samples.assign(len - latency, cd{});
    // Fixed element order keeps the accumulation bit-reproducible.
    for (const auto &st : stages)
    {
        const std::size_t lead = latency - st.shift;
        for (std::size_t j = 0; j < out.samples.size(); ++j)
            out.samples[j] += st.samples[j + lead];
        out.nonlinearity_warning = out.nonlinearity_warning || st.warning;
    }
    return out;
}

} // namespace ttdssp
