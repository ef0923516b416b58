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

#include "ttdssp/waveform.hpp"

#include "ttdssp/errors.hpp"
#include "ttdssp/fft.hpp"

#include <algorithm>
#include <numeric>
#include <random>

namespace ttdssp
{

std::size_t OfdmPlan::n_active() const
{
    return static_cast<std::size_t>(std::count(active_mask.begin(), active_mask.end(), true));
}

double OfdmPlan::bin_frequency_hz(std::size_t bin) const
{
    return fft::zone_frequency(bin, n_subcarriers, sample_rate_hz(), center_hz);
}

std::vector<std::size_t> OfdmPlan::active_bins() const
{
    std::vector<std::size_t> bins;
    for (std::size_t k = 0; k < active_mask.size(); ++k)
        if (active_mask[k])
            bins.push_back(k);
    std::stable_sort(bins.begin(), bins.end(),
                     [this](std::size_t a, std::size_t b) { return bin_frequency_hz(a) < bin_frequency_hz(b); });
    return bins;
}

double OfdmPlan::occupied_bandwidth_hz() const
{
    return static_cast<double>(n_active()) * subcarrier_spacing_hz;
}

void OfdmPlan::validate() const
{
    if (n_subcarriers < 2 || (n_subcarriers & (n_subcarriers - 1)) != 0)
        throw ConfigError("ofdm.n_subcarriers must be a power of two");
    if (!(subcarrier_spacing_hz > 0.0))
        throw ConfigError("ofdm.subcarrier_spacing must be > 0");
    if (active_mask.size() != n_subcarriers)
        throw ConfigError("ofdm active mask length differs from n_subcarriers");
    if (n_active() == 0)
        throw ConfigError("ofdm plan has no active subcarriers");
    if (pilot_values.size() != n_active())
        throw ConfigError("ofdm pilot count differs from active subcarrier count");
    if (cp_len >= n_subcarriers)
        throw ConfigError("ofdm.cp_len must be shorter than the symbol");
    for (const cd &p : pilot_values)
        if (std::abs(std::abs(p) - 1.0) > 1e-9)
            throw ConfigError("ofdm pilots must be unit modulus");
}

void OfdmPlan::validate(const ArrayConfig &cfg) const
{
    validate();
    if (occupied_bandwidth_hz() > cfg.bandwidth_hz * (1.0 + 1e-12))
        throw ConfigError("ofdm occupied bandwidth exceeds the array bandwidth");
}

OfdmPlan OfdmPlan::for_band(const ArrayConfig &cfg, std::size_t n_subcarriers, double spacing_hz,
                            std::size_t cp_len, std::size_t max_active)
{
    OfdmPlan plan;
    plan.n_subcarriers = n_subcarriers;
    plan.subcarrier_spacing_hz = spacing_hz;
    plan.cp_len = cp_len == 0 ? n_subcarriers / 8 : cp_len;
    plan.center_hz = cfg.if_center_hz;
    plan.active_mask.assign(n_subcarriers, false);

    const double lo = cfg.if_center_hz - 0.5 * cfg.bandwidth_hz;
    const double hi = cfg.if_center_hz + 0.5 * cfg.bandwidth_hz;
    const double eps = 1e-6 * spacing_hz;
    std::vector<std::size_t> inside;
    for (std::size_t k = 0; k < n_subcarriers; ++k)
    {
        const double f = plan.bin_frequency_hz(k);
        if (f >= lo - eps && f + spacing_hz <= hi + eps)
            inside.push_back(k);
    }
    if (max_active > 0 && inside.size() > max_active)
    {
        std::stable_sort(inside.begin(), inside.end(), [&](std::size_t a, std::size_t b) {
            const double da = std::abs(plan.bin_frequency_hz(a) - cfg.if_center_hz);
            const double db = std::abs(plan.bin_frequency_hz(b) - cfg.if_center_hz);
            return da < db;
        });
        inside.resize(max_active);
    }
    for (std::size_t k : inside)
        plan.active_mask[k] = true;

    // Constant-modulus chirp pilots, low PAPR.
    const std::size_t a = inside.size();
    plan.pilot_values.resize(a);
    for (std::size_t m = 0; m < a; ++m)
    {
        const double md = static_cast<double>(m);
        plan.pilot_values[m] = std::polar(1.0, -kPi * md * md / static_cast<double>(a));
    }
    return plan;
}

void MultichannelSignal::validate() const
{
    if (channels.empty())
        throw ConfigError("signal has no channels");
    if (!(sample_rate_hz > 0.0))
        throw ConfigError("signal sample rate must be > 0");
    for (const auto &ch : channels)
    {
        if (ch.size() != channels.front().size())
            throw ConfigError("signal channels differ in length");
        for (const cd &v : ch)
            if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
                throw ConfigError("signal contains non-finite samples");
    }
}

double mean_power(std::span<const cd> x)
{
    if (x.empty())
        return 0.0;
    double acc = 0.0;
    for (const cd &v : x)
        acc += std::norm(v);
    return acc / static_cast<double>(x.size());
}

ComplexVector ofdm_modulate(const OfdmPlan &plan, std::span<const ComplexVector> symbols)
{
    plan.validate();
    const std::size_t n = plan.n_subcarriers;
    const auto bins = plan.active_bins();
    const double scale = static_cast<double>(n) / std::sqrt(static_cast<double>(bins.size()));

    ComplexVector out;
    out.reserve(symbols.size() * plan.symbol_length());
    for (const auto &sym : symbols)
    {
        if (sym.size() != bins.size())
            throw ConfigError("OFDM symbol size differs from active subcarrier count");
        ComplexVector grid(n, cd{});
        for (std::size_t m = 0; m < bins.size(); ++m)
            grid[bins[m]] = sym[m];
        ComplexVector body = fft::inverse(grid);
        for (auto &v : body)
            v *= scale;
        out.insert(out.end(), body.end() - static_cast<std::ptrdiff_t>(plan.cp_len), body.end());
        out.insert(out.end(), body.begin(), body.end());
    }
    return out;
}

std::vector<ComplexVector> ofdm_demodulate(const OfdmPlan &plan, std::span<const cd> stream, std::size_t n_symbols,
                                           std::ptrdiff_t cp_start, std::size_t backoff)
{
    plan.validate();
    if (backoff > plan.cp_len)
        throw ConfigError("FFT window backoff exceeds the cyclic prefix");
    const std::size_t n = plan.n_subcarriers;
    const auto bins = plan.active_bins();
    const double scale = std::sqrt(static_cast<double>(bins.size())) / static_cast<double>(n);

    std::vector<ComplexVector> out;
    out.reserve(n_symbols);
    for (std::size_t s = 0; s < n_symbols; ++s)
    {
        const std::ptrdiff_t start = cp_start + static_cast<std::ptrdiff_t>(s * plan.symbol_length() + plan.cp_len) -
                                     static_cast<std::ptrdiff_t>(backoff);
        if (start < 0 || static_cast<std::size_t>(start) + n > stream.size())
            throw AlignmentError("OFDM symbol " + std::to_string(s) + " falls outside the stream");
        ComplexVector X = fft::forward(stream.subspan(static_cast<std::size_t>(start), n));
        ComplexVector sym(bins.size());
        for (std::size_t m = 0; m < bins.size(); ++m)
        {
            const double undo = kTwoPi * static_cast<double>(bins[m] * backoff % n) / static_cast<double>(n);
            sym[m] = X[bins[m]] * scale * std::polar(1.0, undo);
        }
        out.push_back(std::move(sym));
    }
    return out;
}

ComplexVector gen_ofdm(const OfdmPlan &plan, std::size_t n_symbols)
{
    std::vector<ComplexVector> symbols(n_symbols, plan.pilot_values);
    return ofdm_modulate(plan, symbols);
}

namespace
{

void check_zone(double f, double fs, double center)
{
    if (!(fs > 0.0))
        throw ConfigError("sample rate must be > 0");
    if (std::abs(f - center) > 0.5 * fs)
        throw ConfigError("frequency " + std::to_string(f) + " Hz outside the sampled band");
}

} // namespace

ComplexVector gen_tone(double freq_hz, double sample_rate_hz, std::size_t n_samples, double center_hz)
{
    check_zone(freq_hz, sample_rate_hz, center_hz);
    ComplexVector x(n_samples);
    for (std::size_t k = 0; k < n_samples; ++k)
    {
        // Reduce the cycle count first so long streams keep full phase precision.
        const double cycles = std::fmod(freq_hz / sample_rate_hz * static_cast<double>(k), 1.0);
        x[k] = std::polar(1.0, kTwoPi * cycles);
    }
    return x;
}

ComplexVector gen_two_tone(double f1_hz, double f2_hz, double sample_rate_hz, std::size_t n_samples,
                           double center_hz)
{
    ComplexVector a = gen_tone(f1_hz, sample_rate_hz, n_samples, center_hz);
    const ComplexVector b = gen_tone(f2_hz, sample_rate_hz, n_samples, center_hz);
    const double g = 1.0 / std::sqrt(2.0);
    for (std::size_t k = 0; k < n_samples; ++k)
        a[k] = (a[k] + b[k]) * g;
    return a;
}

ComplexVector gen_chirp(double f_lo_hz, double f_hi_hz, double sample_rate_hz, std::size_t n_samples,
                        double center_hz)
{
    check_zone(f_lo_hz, sample_rate_hz, center_hz);
    check_zone(f_hi_hz, sample_rate_hz, center_hz);
    ComplexVector x(n_samples);
    const double duration = n_samples > 1 ? static_cast<double>(n_samples - 1) / sample_rate_hz : 1.0;
    const double rate = (f_hi_hz - f_lo_hz) / duration;
    for (std::size_t k = 0; k < n_samples; ++k)
    {
        const double t = static_cast<double>(k) / sample_rate_hz;
        const double cycles = std::fmod(f_lo_hz * t + 0.5 * rate * t * t, 1.0);
        x[k] = std::polar(1.0, kTwoPi * cycles);
    }
    return x;
}

namespace
{

// Gray-coded amplitude levels per axis.
constexpr int kGray4[4] = {-3, -1, 3, 1}; // bits 00, 01, 10, 11

void check_order(unsigned order)
{
    if (order != 4 && order != 16)
        throw ConfigError("QAM order must be 4 or 16");
}

} // namespace

cd qam_map(unsigned order, unsigned index)
{
    check_order(order);
    if (index >= order)
        throw ConfigError("QAM symbol index out of range");
    if (order == 4)
    {
        const double g = 1.0 / std::sqrt(2.0);
        return {(index & 2u) ? g : -g, (index & 1u) ? g : -g};
    }
    const double g = 1.0 / std::sqrt(10.0);
    return {kGray4[(index >> 2) & 3u] * g, kGray4[index & 3u] * g};
}

unsigned qam_demap(unsigned order, cd point)
{
    check_order(order);
    if (order == 4)
        return (point.real() > 0.0 ? 2u : 0u) | (point.imag() > 0.0 ? 1u : 0u);

    auto axis = [](double v) -> unsigned {
        const double s = v * std::sqrt(10.0);
        if (s < -2.0)
            return 0u; // -3
        if (s < 0.0)
            return 1u; // -1
        if (s < 2.0)
            return 3u; // +1
        return 2u;     // +3
    };
    return (axis(point.real()) << 2) | axis(point.imag());
}

QamFrame gen_qam(unsigned order, std::size_t n_symbols, const OfdmPlan &plan, std::uint64_t seed)
{
    check_order(order);
    plan.validate();
    QamFrame frame;
    frame.order = order;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<unsigned> pick(0, order - 1);
    const std::size_t a = plan.n_active();
    frame.indices.resize(n_symbols);
    frame.symbols.resize(n_symbols);
    for (std::size_t s = 0; s < n_symbols; ++s)
    {
        frame.indices[s].resize(a);
        frame.symbols[s].resize(a);
        for (std::size_t m = 0; m < a; ++m)
        {
            frame.indices[s][m] = pick(rng);
            frame.symbols[s][m] = qam_map(order, frame.indices[s][m]);
        }
    }
    frame.stream = ofdm_modulate(plan, frame.symbols);
    return frame;
}

MultichannelSignal apply_channel(std::span<const cd> stimulus, double sample_rate_hz, const ArrayConfig &cfg,
                                 const ChannelSpec &spec)
{
    cfg.validate();
    if (std::abs(spec.theta_rad) > kPi / 2 + 1e-12)
        throw ConfigError("channel angle outside [-90, 90] degrees");
    if (!(sample_rate_hz > 0.0))
        throw ConfigError("sample rate must be > 0");

    MultichannelSignal sig;
    sig.sample_rate_hz = sample_rate_hz;
    sig.center_hz = cfg.if_center_hz;
    sig.channels.resize(cfg.n_elements);
    sig.meta.theta_rad = spec.theta_rad;
    sig.meta.snr_db = spec.snr_db;
    sig.meta.seed = spec.seed;

    const double dt = inter_element_delay(cfg, spec.theta_rad);
    const double p_sig = mean_power(stimulus);
    const std::ptrdiff_t n_el = static_cast<std::ptrdiff_t>(cfg.n_elements);

#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t n = 0; n < n_el; ++n)
    {
        const double lead = static_cast<double>(n) * dt;
        ComplexVector ch = fft::circular_delay(stimulus, -lead, sample_rate_hz, cfg.if_center_hz);
        const cd lo_rot = std::polar(1.0, kTwoPi * cfg.lo_hz() * lead);
        for (auto &v : ch)
            v *= lo_rot;

        if (spec.snr_db)
        {
            const double sigma = std::sqrt(p_sig * db2pow(-*spec.snr_db) / 2.0);
            std::seed_seq seq{static_cast<std::uint32_t>(spec.seed), static_cast<std::uint32_t>(spec.seed >> 32),
                              static_cast<std::uint32_t>(n), 0x6e6f6973u};
            std::mt19937_64 rng(seq);
            std::normal_distribution<double> gauss(0.0, sigma);
            for (auto &v : ch)
            {
                const double re = gauss(rng);
                const double im = gauss(rng);
                v += cd(re, im);
            }
        }
        sig.channels[static_cast<std::size_t>(n)] = std::move(ch);
    }
    return sig;
}

} // namespace ttdssp
