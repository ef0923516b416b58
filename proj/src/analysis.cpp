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

#include "ttdssp/codebook.hpp"
#include "ttdssp/errors.hpp"
#include "ttdssp/fft.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <exception>
#include <numeric>
#include <sstream>

namespace ttdssp
{

namespace
{

std::vector<double> make_window(Window kind, std::size_t n)
{
    std::vector<double> w(n, 1.0);
    if (kind == Window::Hann)
        for (std::size_t i = 0; i < n; ++i)
            w[i] = 0.5 - 0.5 * std::cos(kTwoPi * static_cast<double>(i) / static_cast<double>(n));
    return w;
}

double median(std::vector<double> v)
{
    if (v.empty())
        return 0.0;
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    return *mid;
}

SamplerConfig at_rate(const SamplerConfig &scfg, double fs)
{
    SamplerConfig s = scfg;
    s.plan.sample_rate_hz = fs;
    return s;
}

double positive_mod(double x, double period)
{
    const double m = std::fmod(x, period);
    return m < 0.0 ? m + period : m;
}

} // namespace

// ---- spectra -----------------------------------------------------------

double Psd::bin_frequency_hz(std::size_t bin) const
{
    return fft::zone_frequency(bin, nfft(), sample_rate_hz, center_hz);
}

std::size_t Psd::nearest_bin(double freq_hz) const
{
    const auto n = static_cast<long long>(nfft());
    long long k = std::llround(freq_hz / sample_rate_hz * static_cast<double>(n)) % n;
    if (k < 0)
        k += n;
    return static_cast<std::size_t>(k);
}

double Psd::integrated_power() const
{
    return std::accumulate(power.begin(), power.end(), 0.0) / enbw_bins;
}

Psd psd(std::span<const cd> x, double sample_rate_hz, double center_hz, const WelchOptions &opt)
{
    if (opt.nfft == 0)
        throw ConfigError("psd nfft must be > 0");
    if (!(sample_rate_hz > 0.0))
        throw ConfigError("psd sample rate must be > 0");
    const std::size_t n = opt.nfft;
    const std::size_t hop = opt.hop == 0 ? std::max<std::size_t>(n / 2, 1) : opt.hop;
    if (opt.offset + n > x.size())
        throw ConfigError("stream shorter than one psd segment");

    const auto w = make_window(opt.window, n);
    const double s1 = std::accumulate(w.begin(), w.end(), 0.0);
    const double s2 = std::inner_product(w.begin(), w.end(), w.begin(), 0.0);

    Psd out;
    out.sample_rate_hz = sample_rate_hz;
    out.center_hz = center_hz;
    out.enbw_bins = static_cast<double>(n) * s2 / (s1 * s1);
    out.power.assign(n, 0.0);

    ComplexVector seg(n);
    for (std::size_t start = opt.offset; start + n <= x.size(); start += hop)
    {
        for (std::size_t i = 0; i < n; ++i)
            seg[i] = x[start + i] * w[i];
        const auto X = fft::forward(seg);
        for (std::size_t k = 0; k < n; ++k)
            out.power[k] += std::norm(X[k]);
        ++out.segments;
    }
    const double scale = 1.0 / (static_cast<double>(out.segments) * s1 * s1);
    for (auto &p : out.power)
        p *= scale;
    return out;
}

std::vector<double> subcarrier_power(std::span<const cd> x, const OfdmPlan &plan, std::ptrdiff_t cp_start,
                                     std::size_t backoff)
{
    plan.validate();
    const auto sym = static_cast<std::ptrdiff_t>(plan.symbol_length());
    const auto win_off = static_cast<std::ptrdiff_t>(plan.cp_len) - static_cast<std::ptrdiff_t>(backoff);
    const auto n = static_cast<std::ptrdiff_t>(plan.n_subcarriers);
    const auto len = static_cast<std::ptrdiff_t>(x.size());

    std::ptrdiff_t first = cp_start;
    while (first + win_off < 0)
        first += sym;
    std::size_t count = 0;
    while (first + static_cast<std::ptrdiff_t>(count) * sym + win_off + n <= len)
        ++count;
    if (count == 0)
        throw AlignmentError("no whole OFDM symbol inside the stream");

    const auto symbols = ofdm_demodulate(plan, x, count, first, backoff);
    std::vector<double> p(plan.n_active(), 0.0);
    for (const auto &s : symbols)
        for (std::size_t m = 0; m < p.size(); ++m)
            p[m] += std::norm(s[m]);
    for (auto &v : p)
        v /= static_cast<double>(count);
    return p;
}

// ---- beam training -----------------------------------------------------

OfdmPlan sounding_plan(const OfdmPlan &plan)
{
    OfdmPlan burst = plan;
    burst.cp_len = 0;
    return burst;
}

double AngleFrequencyMap::fold(double freq_hz) const
{
    return band_low_hz + positive_mod(freq_hz - band_low_hz, band_width_hz);
}

std::size_t AngleFrequencyMap::anchor_index() const
{
    if (angles_rad.empty())
        throw ConfigError("empty angle-frequency map");
    std::size_t best = 0;
    for (std::size_t i = 1; i < angles_rad.size(); ++i)
        if (std::abs(angles_rad[i]) < std::abs(angles_rad[best]))
            best = i;
    return peak_subcarrier_index[best];
}

namespace
{

double ridge_centroid(std::span<const double> power, std::span<const double> freqs_hz, double band_width_hz,
                      std::size_t start, std::size_t half_width, unsigned iterations)
{
    const std::size_t a = power.size();
    const std::size_t hw = std::min(half_width, (a - 1) / 2);
    const double spacing =
        a > 1 ? std::abs(wrap_centered(freqs_hz[(start + 1) % a] - freqs_hz[start], band_width_hz)) : 0.0;
    double centre = freqs_hz[start];
    std::size_t anchor = start;
    for (unsigned it = 0; it < std::max(iterations, 1u); ++it)
    {
        double sw = 0.0;
        double swf = 0.0;
        for (std::size_t o = 0; o <= 2 * hw; ++o)
        {
            const std::size_t j = (anchor + a - hw + o) % a;
            const double d = wrap_centered(freqs_hz[j] - centre, band_width_hz);
            sw += power[j];
            swf += power[j] * d;
        }
        if (!(sw > 0.0))
            break;
        const double next = centre + swf / sw;
        const bool settled = std::abs(next - centre) < 1e-9 * spacing;
        centre = next;
        if (settled || spacing == 0.0)
            break;
        const auto steps = static_cast<long long>(
            std::round(wrap_centered(centre - freqs_hz[anchor], band_width_hz) / spacing));
        const auto aa = static_cast<long long>(a);
        anchor = static_cast<std::size_t>(((static_cast<long long>(anchor) + steps) % aa + aa) % aa);
    }
    return centre;
}

} // namespace

RidgePeak ridge_peak(std::span<const double> power, std::span<const double> freqs_hz, double band_width_hz,
                     std::size_t half_width, unsigned iterations)
{
    if (power.empty() || power.size() != freqs_hz.size())
        throw ConfigError("ridge_peak needs one frequency per power value");
    RidgePeak r;
    r.index = static_cast<std::size_t>(std::max_element(power.begin(), power.end()) - power.begin());
    r.frequency_hz = ridge_centroid(power, freqs_hz, band_width_hz, r.index, half_width, iterations);
    return r;
}

std::size_t lobe_half_width(const ArrayConfig &cfg, unsigned diversity_order, double spacing_hz)
{
    const double w = 0.443 * cfg.bandwidth_hz /
                     (static_cast<double>(diversity_order) * static_cast<double>(cfg.n_elements) * spacing_hz);
    return std::max<std::size_t>(3, static_cast<std::size_t>(std::floor(w)));
}

namespace
{

std::vector<std::size_t> strongest_lobes(std::span<const double> p, unsigned count)
{
    const std::size_t a = p.size();
    std::vector<std::size_t> peaks;
    for (std::size_t i = 0; i < a; ++i)
    {
        const double l = p[(i + a - 1) % a];
        const double r = p[(i + 1) % a];
        if (p[i] >= l && p[i] > r)
            peaks.push_back(i);
    }
    std::stable_sort(peaks.begin(), peaks.end(), [&](std::size_t x, std::size_t y) { return p[x] > p[y]; });
    if (peaks.size() > count)
        peaks.resize(count);
    std::sort(peaks.begin(), peaks.end());
    return peaks;
}

struct Unwrapped
{
    std::vector<std::size_t> rows; // usable rows in ascending angle
    std::vector<double> u;         // unwrapped ridge frequency
};

Unwrapped unwrap_map(const AngleFrequencyMap &map)
{
    Unwrapped out;
    for (std::size_t i = 0; i < map.angles_rad.size(); ++i)
        if (map.usable[i])
            out.rows.push_back(i);
    std::stable_sort(out.rows.begin(), out.rows.end(),
                     [&](std::size_t x, std::size_t y) { return map.angles_rad[x] < map.angles_rad[y]; });
    if (out.rows.empty())
        return out;
    out.u.push_back(map.peak_frequency_hz[out.rows.front()]);
    for (std::size_t k = 1; k < out.rows.size(); ++k)
    {
        const double d = wrap_centered(map.peak_frequency_hz[out.rows[k]] - map.peak_frequency_hz[out.rows[k - 1]],
                                       map.band_width_hz);
        out.u.push_back(out.u.back() + d);
    }
    return out;
}

std::string degree_list(const std::vector<std::pair<double, double>> &pairs)
{
    std::ostringstream os;
    os.precision(6);
    for (std::size_t i = 0; i < pairs.size() && i < 8; ++i)
        os << (i ? ", " : "") << '(' << rad2deg(pairs[i].first) << ", " << rad2deg(pairs[i].second) << ')';
    if (pairs.size() > 8)
        os << ", ... " << pairs.size() << " total";
    return os.str();
}

} // namespace

AngleFrequencyMap build_map(const ArrayConfig &cfg, const TapSet &taps, const OfdmPlan &plan,
                            std::span<const double> theta_grid)
{
    cfg.validate();
    plan.validate(cfg);
    if (taps.mode != SspMode::Training)
        throw ConfigError("build_map needs training taps");
    if (theta_grid.size() < 2)
        throw ConfigError("build_map needs at least two angles");

    AngleFrequencyMap map;
    map.angles_rad.assign(theta_grid.begin(), theta_grid.end());
    map.diversity_order = taps.diversity_order;
    map.band_width_hz = cfg.bandwidth_hz;
    map.band_low_hz = cfg.if_center_hz - 0.5 * cfg.bandwidth_hz;
    map.centroid_half_width = lobe_half_width(cfg, taps.diversity_order, plan.subcarrier_spacing_hz);
    map.centroid_iterations = 16;

    const auto bins = plan.active_bins();
    std::vector<double> rf(bins.size());
    map.subcarrier_freq_hz.resize(bins.size());
    for (std::size_t m = 0; m < bins.size(); ++m)
    {
        map.subcarrier_freq_hz[m] = plan.bin_frequency_hz(bins[m]);
        rf[m] = cfg.to_rf(map.subcarrier_freq_hz[m]);
    }
    const auto grid = response_grid(cfg, taps, theta_grid, rf);

    const std::size_t rows = theta_grid.size();
    const std::size_t cols = bins.size();
    map.peak_subcarrier_index.resize(rows);
    map.peak_subcarriers.resize(rows);
    map.peak_frequency_hz.resize(rows);
    map.lobe_frequency_hz.resize(rows);
    map.peak_gain.resize(rows);
    map.usable.resize(rows);
    const double n2 = static_cast<double>(cfg.n_elements * cfg.n_elements);

    const auto n_rows = static_cast<std::ptrdiff_t>(rows);
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t ii = 0; ii < n_rows; ++ii)
    {
        const auto i = static_cast<std::size_t>(ii);
        const std::span<const double> row(grid.data() + i * cols, cols);
        const auto rp = ridge_peak(row, map.subcarrier_freq_hz, cfg.bandwidth_hz, map.centroid_half_width,
                                   map.centroid_iterations);
        map.peak_subcarrier_index[i] = rp.index;
        map.peak_frequency_hz[i] = map.fold(rp.frequency_hz);
        map.peak_subcarriers[i] = strongest_lobes(row, taps.diversity_order);
        for (auto k : map.peak_subcarriers[i])
            map.lobe_frequency_hz[i].push_back(map.fold(ridge_centroid(
                row, map.subcarrier_freq_hz, cfg.bandwidth_hz, k, map.centroid_half_width, map.centroid_iterations)));
        std::sort(map.lobe_frequency_hz[i].begin(), map.lobe_frequency_hz[i].end());
        map.peak_gain[i] = row[rp.index];
        map.usable[i] = row[rp.index] >= 0.5 * n2;
    }

    const auto uw = unwrap_map(map);
    if (uw.rows.size() < 2)
        throw MapAmbiguityError("fewer than two angles reach half the full array gain");
    if (taps.diversity_order > 1)
        return map;

    const double span = uw.u.back() - uw.u.front();
    const double dir = span >= 0.0 ? 1.0 : -1.0;
    const double tol = 1e-6 * plan.subcarrier_spacing_hz;
    std::vector<std::pair<double, double>> bad;
    for (std::size_t k = 1; k < uw.rows.size(); ++k)
        if (dir * (uw.u[k] - uw.u[k - 1]) <= tol)
            bad.emplace_back(map.angles_rad[uw.rows[k - 1]], map.angles_rad[uw.rows[k]]);
    if (std::abs(span) >= map.band_width_hz - tol)
        bad.emplace_back(map.angles_rad[uw.rows.front()], map.angles_rad[uw.rows.back()]);
    if (!bad.empty())
        throw MapAmbiguityError("subcarrier-to-angle map is not one-to-one; colliding angles (deg): " +
                                degree_list(bad));
    return map;
}

std::vector<std::pair<double, double>> integer_collisions(const AngleFrequencyMap &map)
{
    std::vector<std::pair<double, double>> out;
    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < map.angles_rad.size(); ++i)
        if (map.usable.empty() || map.usable[i])
            rows.push_back(i);
    for (std::size_t a = 0; a < rows.size(); ++a)
        for (std::size_t b = a + 1; b < rows.size(); ++b)
            if (map.peak_subcarrier_index[rows[a]] == map.peak_subcarrier_index[rows[b]])
                out.emplace_back(map.angles_rad[rows[a]], map.angles_rad[rows[b]]);
    return out;
}

AoaEstimate estimate_aoa(std::span<const double> received_power, const AngleFrequencyMap &map)
{
    if (received_power.size() != map.subcarrier_freq_hz.size())
        throw ConfigError("received PSD has " + std::to_string(received_power.size()) + " subcarriers, map has " +
                          std::to_string(map.subcarrier_freq_hz.size()));
    const auto rp = ridge_peak(received_power, map.subcarrier_freq_hz, map.band_width_hz, map.centroid_half_width,
                               map.centroid_iterations);
    // Peak-to-median on the PSD averaged over the centroid window, so single
    // noise bins do not count as a lobe.
    const std::size_t a = received_power.size();
    const std::size_t hw = std::min(map.centroid_half_width, (a - 1) / 2);
    std::vector<double> smooth(a);
    double run = 0.0;
    for (std::size_t o = 0; o <= 2 * hw; ++o)
        run += received_power[(a - hw + o) % a];
    for (std::size_t k = 0; k < a; ++k)
    {
        smooth[k] = run / static_cast<double>(2 * hw + 1);
        run += received_power[(k + hw + 1) % a] - received_power[(k + a - hw) % a];
    }
    const double peak = *std::max_element(smooth.begin(), smooth.end());
    const double med = median(smooth);

    AoaEstimate est;
    est.peak_bin = rp.index;
    est.confidence_db = med > 0.0 ? pow2db(peak / med) : (peak > 0.0 ? std::numeric_limits<double>::infinity() : 0.0);
    if (!(est.confidence_db >= 3.0))
        throw NoDetectionError("no spectral peak 3 dB above the median (peak-to-median " +
                               std::to_string(est.confidence_db) + " dB)");
    const double f = map.fold(rp.frequency_hz);
    est.peak_frequency_hz = f;

    std::vector<std::size_t> rows;
    for (std::size_t i = 0; i < map.angles_rad.size(); ++i)
        if (map.usable[i])
            rows.push_back(i);
    std::stable_sort(rows.begin(), rows.end(),
                     [&](std::size_t x, std::size_t y) { return map.angles_rad[x] < map.angles_rad[y]; });
    if (rows.empty())
        throw NoDetectionError("angle-frequency map has no usable rows");

    const double bw = map.band_width_hz;
    const double spacing = bw / static_cast<double>(received_power.size());
    auto nearest_of = [&](const std::vector<double> &lobes, double x) {
        double d = std::numeric_limits<double>::infinity();
        for (double l : lobes)
            if (std::abs(wrap_centered(l - x, bw)) < std::abs(d))
                d = wrap_centered(l - x, bw);
        return d;
    };
    // Distance between the received ridge and the other lobes predicted by a
    // bracket; separates candidates when R > 1.
    auto lobe_mismatch = [&](const std::vector<double> &la, const std::vector<double> &lb, std::size_t skip,
                             double t) {
        double acc = 0.0;
        for (std::size_t r = 0; r < la.size(); ++r)
        {
            if (r == skip)
                continue;
            const double predicted = la[r] + t * nearest_of(lb, la[r]);
            const auto start = static_cast<std::size_t>(std::min_element(map.subcarrier_freq_hz.begin(),
                                                                         map.subcarrier_freq_hz.end(),
                                                                         [&](double x, double y) {
                                                                             return std::abs(wrap_centered(
                                                                                        x - predicted, bw)) <
                                                                                    std::abs(wrap_centered(
                                                                                        y - predicted, bw));
                                                                         }) -
                                                        map.subcarrier_freq_hz.begin());
            const double c = ridge_centroid(received_power, map.subcarrier_freq_hz, bw, start,
                                            map.centroid_half_width, map.centroid_iterations);
            acc += std::abs(wrap_centered(c - predicted, bw)) / spacing;
        }
        return acc;
    };

    bool found = false;
    double best_score = std::numeric_limits<double>::infinity();
    for (std::size_t k = 1; k < rows.size(); ++k)
    {
        const auto &la = map.lobe_frequency_hz[rows[k - 1]];
        const auto &lb = map.lobe_frequency_hz[rows[k]];
        for (std::size_t r = 0; r < la.size(); ++r)
        {
            const double db = nearest_of(lb, la[r]);
            const double dx = wrap_centered(f - la[r], bw);
            if (db == 0.0)
                continue;
            const double t = dx / db;
            if (t < -1e-6 || t > 1.0 + 1e-6)
                continue;
            const double score = la.size() > 1 ? lobe_mismatch(la, lb, r, t) : 0.0;
                    if (!found || score < best_score)
            {
                const double ta = map.angles_rad[rows[k - 1]];
                const double tb = map.angles_rad[rows[k]];
                est.theta_rad = ta + t * (tb - ta);
                best_score = score;
                found = true;
            }
        }
    }
    if (found)
        return est;

    double best = std::numeric_limits<double>::infinity();
    for (auto i : rows)
        for (double fl : map.lobe_frequency_hz[i])
            if (std::abs(wrap_centered(f - fl, bw)) < best)
            {
                best = std::abs(wrap_centered(f - fl, bw));
                est.theta_rad = map.angles_rad[i];
            }
    return est;
}

std::vector<double> measure_training_response(const ArrayConfig &cfg, const TapSet &taps, const OfdmPlan &plan,
                                              const ChannelSpec &channel, const SamplerConfig &scfg,
                                              std::size_t n_symbols)
{
    plan.validate(cfg);
    if (std::abs(plan.center_hz - cfg.if_center_hz) > 1e-6)
        throw ConfigError("ofdm grid centre differs from the array IF centre");
    if (n_symbols < 2)
        throw ConfigError("sounding needs at least two pilot repetitions");
    const double fs = plan.sample_rate_hz();
    const OfdmPlan burst = sounding_plan(plan);
    const auto stim = gen_ofdm(burst, n_symbols);
    const auto sig = apply_channel(stim, fs, cfg, channel);
    const auto comb = delay_and_combine(sig, taps, at_rate(scfg, fs));
    return subcarrier_power(comb.samples, burst, -static_cast<std::ptrdiff_t>(comb.latency_samples));
}

std::vector<std::size_t> Heatmap::row_argmax() const
{
    std::vector<std::size_t> out(rows());
    for (std::size_t i = 0; i < rows(); ++i)
    {
        const auto first = db.begin() + static_cast<std::ptrdiff_t>(i * cols());
        out[i] = static_cast<std::size_t>(std::max_element(first, first + static_cast<std::ptrdiff_t>(cols())) - first);
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
    hm.db.assign(hm.rows() * hm.cols(), 0.0);

    const auto n_rows = static_cast<std::ptrdiff_t>(hm.rows());
    std::exception_ptr err;
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t ii = 0; ii < n_rows; ++ii)
    {
        try
        {
            const auto i = static_cast<std::size_t>(ii);
            const auto p = measure_training_response(cfg, taps, plan, {theta_grid[i], std::nullopt, 1}, scfg, n_symbols);
            for (std::size_t k = 0; k < p.size(); ++k)
                hm.db[i * hm.cols() + k] = pow2db(std::max(p[k], 1e-30));
        }
        catch (...)
        {
#pragma omp critical
            if (!err)
                err = std::current_exception();
        }
    }
    if (err)
        std::rethrow_exception(err);
    return hm;
}

AoaTrialStats aoa_monte_carlo(const ArrayConfig &cfg, const TapSet &taps, const OfdmPlan &plan,
                              const AngleFrequencyMap &map, double theta, double snr_db, std::size_t trials,
                              std::uint64_t seed, const SamplerConfig &scfg, std::size_t n_symbols)
{
    std::vector<double> err(trials, std::numeric_limits<double>::quiet_NaN());
    std::exception_ptr failure;
    const auto n = static_cast<std::ptrdiff_t>(trials);
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t t = 0; t < n; ++t)
    {
        try
        {
            const ChannelSpec ch{theta, snr_db, seed + static_cast<std::uint64_t>(t)};
            const auto p = measure_training_response(cfg, taps, plan, ch, scfg, n_symbols);
            err[static_cast<std::size_t>(t)] = estimate_aoa(p, map).theta_rad - theta;
        }
        catch (const NoDetectionError &)
        {
        }
        catch (...)
        {
#pragma omp critical
            if (!failure)
                failure = std::current_exception();
        }
    }
    if (failure)
        std::rethrow_exception(failure);

    AoaTrialStats st;
    st.trials = trials;
    double ss = 0.0;
    for (double e : err)
        if (!std::isnan(e))
        {
            ++st.detections;
            ss += e * e;
            st.max_error_rad = std::max(st.max_error_rad, std::abs(e));
        }
    st.rms_error_rad = st.detections ? std::sqrt(ss / static_cast<double>(st.detections))
                                     : std::numeric_limits<double>::quiet_NaN();
    return st;
}

// ---- beamforming -------------------------------------------------------

namespace
{

double snap_baseband(const ArrayConfig &cfg, double freq_hz, double fs, std::size_t n)
{
    const double bb = cfg.to_baseband(freq_hz);
    return std::round(bb / fs * static_cast<double>(n)) * fs / static_cast<double>(n);
}

double combined_tone_power(const ArrayConfig &cfg, const TapSet &taps, double theta, double bb_hz,
                           const SamplerConfig &scfg, std::size_t n_samples)
{
    const double fs = scfg.plan.sample_rate_hz;
    const auto tone = gen_tone(bb_hz, fs, n_samples, cfg.if_center_hz);
    const auto sig = apply_channel(tone, fs, cfg, {theta, std::nullopt, 1});
    const auto comb = delay_and_combine(sig, taps, scfg);
    return mean_power(comb.samples);
}

ArrayConfig single_element(const ArrayConfig &cfg)
{
    ArrayConfig one = cfg;
    one.n_elements = 1;
    return one;
}

} // namespace

double tone_gain(const ArrayConfig &cfg, const TapSet &taps, double theta, double freq_hz, const SamplerConfig &scfg,
                 std::size_t n_samples)
{
    const double bb = snap_baseband(cfg, freq_hz, scfg.plan.sample_rate_hz, n_samples);
    return combined_tone_power(cfg, taps, theta, bb, scfg, n_samples);
}

GainCurve beamforming_gain(const ArrayConfig &cfg, double theta, std::span<const double> freq_grid_hz,
                           const SamplerConfig &scfg, std::size_t n_samples)
{
    cfg.validate();
    const auto taps = beamforming_taps(cfg, theta);
    const auto one = single_element(cfg);
    const auto taps1 = beamforming_taps(one, theta);
    const double fs = scfg.plan.sample_rate_hz;

    GainCurve out;
    out.freq_hz.resize(freq_grid_hz.size());
    out.gain_db.resize(freq_grid_hz.size());
    std::exception_ptr err;
    const auto n = static_cast<std::ptrdiff_t>(freq_grid_hz.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t ii = 0; ii < n; ++ii)
    {
        try
        {
            const auto i = static_cast<std::size_t>(ii);
            const double bb = snap_baseband(cfg, freq_grid_hz[i], fs, n_samples);
            const double pn = combined_tone_power(cfg, taps, theta, bb, scfg, n_samples);
            const double p1 = combined_tone_power(one, taps1, theta, bb, scfg, n_samples);
            out.freq_hz[i] = cfg.to_rf(bb);
            out.gain_db[i] = pow2db(pn / p1);
        }
        catch (...)
        {
#pragma omp critical
            if (!err)
                err = std::current_exception();
        }
    }
    if (err)
        std::rethrow_exception(err);
    return out;
}

GainCurve chirp_gain(const ArrayConfig &cfg, double theta, double f_lo_hz, double f_hi_hz, const SamplerConfig &scfg,
                     std::size_t n_samples, std::size_t nfft)
{
    cfg.validate();
    const double fs = scfg.plan.sample_rate_hz;
    const double lo = cfg.to_baseband(f_lo_hz);
    const double hi = cfg.to_baseband(f_hi_hz);
    const auto chirp = gen_chirp(lo, hi, fs, n_samples, cfg.if_center_hz);

    auto run = [&](const ArrayConfig &c) {
        const auto sig = apply_channel(chirp, fs, c, {theta, std::nullopt, 1});
        const auto comb = delay_and_combine(sig, beamforming_taps(c, theta), scfg);
        return psd(comb.samples, fs, cfg.if_center_hz, {nfft, 0, 0, Window::Hann});
    };
    const auto pn = run(cfg);
    const auto p1 = run(single_element(cfg));

    std::vector<std::pair<double, double>> pts;
    for (std::size_t k = 0; k < nfft; ++k)
    {
        const double f = pn.bin_frequency_hz(k);
        if (f >= lo && f <= hi && p1.power[k] > 0.0)
            pts.emplace_back(f, pow2db(pn.power[k] / p1.power[k]));
    }
    std::sort(pts.begin(), pts.end());
    GainCurve out;
    for (const auto &[f, g] : pts)
    {
        out.freq_hz.push_back(cfg.to_rf(f));
        out.gain_db.push_back(g);
    }
    return out;
}

// ---- modulation quality -------------------------------------------------

EvmReport evm(std::span<const cd> received, std::span<const cd> reference)
{
    if (received.size() != reference.size() || reference.empty())
        throw AlignmentError("received and reference symbol counts differ (" + std::to_string(received.size()) +
                             " vs " + std::to_string(reference.size()) + ")");
    cd xc{};
    double pr = 0.0;
    double ps = 0.0;
    for (std::size_t i = 0; i < reference.size(); ++i)
    {
        xc += received[i] * std::conj(reference[i]);
        pr += std::norm(received[i]);
        ps += std::norm(reference[i]);
    }
    if (!(ps > 0.0) || !(pr > 0.0) || std::abs(xc) / std::sqrt(pr * ps) < 0.3)
        throw AlignmentError("received symbols do not correlate with the reference");

    EvmReport rep;
    rep.equalizer = xc / ps;
    rep.constellation.resize(received.size());
    rep.per_symbol_error.resize(received.size());
    const double ref_rms = std::sqrt(ps / static_cast<double>(reference.size()));
    double pe = 0.0;
    for (std::size_t i = 0; i < received.size(); ++i)
    {
        rep.constellation[i] = received[i] / rep.equalizer;
        const double e = std::abs(rep.constellation[i] - reference[i]);
        pe += e * e;
        rep.per_symbol_error[i] = 100.0 * e / ref_rms;
    }
    rep.evm_rms_pct = 100.0 * std::sqrt(pe / ps);
    return rep;
}

// ---- linearity ---------------------------------------------------------

Iip3Result extract_iip3(std::span<const TwoToneMeasurement> sweep, double f1_hz, double f2_hz)
{
    if (sweep.empty())
        throw ConfigError("two-tone sweep is empty");
    if (f1_hz == f2_hz)
        throw ConfigError("two-tone frequencies must differ");

    Iip3Result res;
    std::vector<double> xs;
    std::vector<double> ys;
    double best_level = std::numeric_limits<double>::infinity();
    for (const auto &m : sweep)
    {
        const auto &p = m.output;
        const double fund = 0.5 * (p.at(f1_hz) + p.at(f2_hz));
        const double im3 = 0.5 * (p.at(2.0 * f1_hz - f2_hz) + p.at(2.0 * f2_hz - f1_hz));
        const double floor = std::max(median(p.power), fund * 1e-15);
        const double fund_db = pow2db(fund);
        const double im3_db = im3 > 0.0 ? pow2db(im3) : -std::numeric_limits<double>::infinity();
        res.fundamental_dbm.push_back(fund_db);
        res.im3_dbm.push_back(im3_db);
        if (im3 >= 10.0 * floor && fund > 0.0)
        {
            const double point = m.input_dbm_per_tone + 0.5 * (fund_db - im3_db);
            res.point_iip3_dbm.push_back(point);
            xs.push_back(m.input_dbm_per_tone);
            ys.push_back(im3_db);
            if (m.input_dbm_per_tone < best_level)
            {
                best_level = m.input_dbm_per_tone;
                res.iip3_dbm = point;
                res.detected = true;
            }
        }
        else
        {
            res.point_iip3_dbm.push_back(std::numeric_limits<double>::infinity());
        }
    }
    if (!res.detected)
        res.iip3_dbm = std::numeric_limits<double>::infinity();

    if (xs.size() >= 2)
    {
        const double mx = std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
        const double my = std::accumulate(ys.begin(), ys.end(), 0.0) / static_cast<double>(ys.size());
        double sxx = 0.0;
        double sxy = 0.0;
        for (std::size_t i = 0; i < xs.size(); ++i)
        {
            sxx += (xs[i] - mx) * (xs[i] - mx);
            sxy += (xs[i] - mx) * (ys[i] - my);
        }
        res.im3_slope = sxx > 0.0 ? sxy / sxx : std::numeric_limits<double>::quiet_NaN();
        res.slope_warning = !(res.im3_slope >= 2.5 && res.im3_slope <= 3.5);
    }
    else
    {
        res.im3_slope = std::numeric_limits<double>::quiet_NaN();
    }
    return res;
}

std::vector<TwoToneMeasurement> two_tone_sweep(const SamplerConfig &scfg, double f1_hz, double f2_hz,
                                               std::span<const double> input_dbm_per_tone, double center_hz,
                                               std::size_t nfft, std::size_t n_samples)
{
    scfg.validate();
    const double fs = scfg.plan.sample_rate_hz;
    TapSet taps;
    taps.mode = SspMode::Beamforming;
    taps.delays_s = {0.0};
    taps.phases_rad = {0.0};

    std::vector<TwoToneMeasurement> out(input_dbm_per_tone.size());
    std::exception_ptr err;
    const auto n = static_cast<std::ptrdiff_t>(input_dbm_per_tone.size());
#pragma omp parallel for schedule(dynamic)
    for (std::ptrdiff_t ii = 0; ii < n; ++ii)
    {
        try
        {
            const auto i = static_cast<std::size_t>(ii);
            MultichannelSignal sig;
            sig.sample_rate_hz = fs;
            sig.center_hz = center_hz;
            auto x = gen_two_tone(f1_hz, f2_hz, fs, n_samples, center_hz);
            const double a = std::sqrt(2.0) * dbm_to_amplitude(input_dbm_per_tone[i]);
            for (auto &v : x)
                v *= a;
            sig.channels.push_back(std::move(x));
            const auto comb = delay_and_combine(sig, taps, scfg);
            out[i].input_dbm_per_tone = input_dbm_per_tone[i];
            out[i].output = psd(comb.samples, fs, center_hz, {nfft, nfft, 0, Window::Hann});
        }
        catch (...)
        {
#pragma omp critical
            if (!err)
                err = std::current_exception();
        }
    }
    if (err)
        std::rethrow_exception(err);
    return out;
}

} // namespace ttdssp
