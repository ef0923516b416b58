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

#include "ttdssp/array_core.hpp"

#include "ttdssp/errors.hpp"

#include <algorithm>
#include <limits>
#include <string>

namespace ttdssp
{

std::string_view to_string(SspMode mode)
{
    return mode == SspMode::Training ? "training" : "beamforming";
}

ArrayConfig ArrayConfig::critical(std::size_t n_elements, double carrier_hz, double bandwidth_hz)
{
    ArrayConfig cfg;
    cfg.n_elements = n_elements;
    cfg.carrier_hz = carrier_hz;
    cfg.bandwidth_hz = bandwidth_hz;
    cfg.spacing_m = kSpeedOfLight / (2.0 * carrier_hz);
    cfg.if_center_hz = 0.5 * bandwidth_hz;
    return cfg;
}

bool ArrayConfig::critically_spaced() const
{
    const double half_lambda = kSpeedOfLight / (2.0 * carrier_hz);
    return std::abs(spacing_m - half_lambda) / spacing_m < 1e-9;
}

void ArrayConfig::validate() const
{
    if (n_elements < 1)
        throw ConfigError("array.elements must be >= 1");
    if (!(spacing_m > 0.0) || !std::isfinite(spacing_m))
        throw ConfigError("array.spacing must be > 0");
    if (!(carrier_hz > 0.0) || !std::isfinite(carrier_hz))
        throw ConfigError("array.carrier must be > 0");
    if (!(bandwidth_hz > 0.0) || !std::isfinite(bandwidth_hz))
        throw ConfigError("array.bandwidth must be > 0");
    if (!std::isfinite(if_center_hz))
        throw ConfigError("array.if_center must be finite");
}

double inter_element_delay(double theta, double carrier_hz)
{
    return std::sin(theta) / (2.0 * carrier_hz);
}

double inter_element_delay(const ArrayConfig &cfg, double theta)
{
    return cfg.spacing_m * std::sin(theta) / kSpeedOfLight;
}

ComplexVector steering_vector(const ArrayConfig &cfg, double theta, double freq_hz)
{
    ComplexVector a(cfg.n_elements);
    const double step = kTwoPi * cfg.spacing_m * freq_hz * std::sin(theta) / kSpeedOfLight;
    for (std::size_t n = 0; n < cfg.n_elements; ++n)
        a[n] = std::polar(1.0, -step * static_cast<double>(n));
    return a;
}

namespace
{

void check_taps(const ArrayConfig &cfg, const TapSet &taps)
{
    if (taps.delays_s.size() != cfg.n_elements || taps.phases_rad.size() != cfg.n_elements)
        throw ConfigError("tap set has " + std::to_string(taps.delays_s.size()) + " delays / " +
                          std::to_string(taps.phases_rad.size()) + " phases for a " +
                          std::to_string(cfg.n_elements) + "-element array");
}

void check_in_band(const ArrayConfig &cfg, double freq_hz)
{
    const double slack = 1e-9 * cfg.bandwidth_hz;
    if (freq_hz < cfg.band_low_hz() - slack || freq_hz > cfg.band_high_hz() + slack)
        throw ConfigError("frequency " + std::to_string(freq_hz) + " Hz outside the array band");
}

double gain_unchecked(const ArrayConfig &cfg, const TapSet &taps, double sin_theta, double freq_hz)
{
    const double f_bb = cfg.to_baseband(freq_hz);
    const double array_step = kTwoPi * cfg.spacing_m * freq_hz * sin_theta / kSpeedOfLight;
    double re = 0.0, im = 0.0;
    for (std::size_t n = 0; n < cfg.n_elements; ++n)
    {
        const double ph = kTwoPi * f_bb * taps.delays_s[n] + taps.phases_rad[n] - array_step * static_cast<double>(n);
        re += std::cos(ph);
        im += std::sin(ph);
    }
    return re * re + im * im;
}

} // namespace

double array_gain(const ArrayConfig &cfg, const TapSet &taps, double theta, double freq_hz)
{
    check_taps(cfg, taps);
    check_in_band(cfg, freq_hz);
    return gain_unchecked(cfg, taps, std::sin(theta), freq_hz);
}

std::vector<double> response_grid(const ArrayConfig &cfg, const TapSet &taps, std::span<const double> thetas,
                                  std::span<const double> freqs)
{
    check_taps(cfg, taps);
    for (double f : freqs)
        check_in_band(cfg, f);

    const std::ptrdiff_t rows = static_cast<std::ptrdiff_t>(thetas.size());
    const std::ptrdiff_t cols = static_cast<std::ptrdiff_t>(freqs.size());
    std::vector<double> out(thetas.size() * freqs.size());

#pragma omp parallel for collapse(2) schedule(static)
    for (std::ptrdiff_t i = 0; i < rows; ++i)
        for (std::ptrdiff_t k = 0; k < cols; ++k)
            out[i * cols + k] = gain_unchecked(cfg, taps, std::sin(thetas[i]), freqs[k]);

    return out;
}

std::vector<double> system_response(const ArrayConfig &cfg, const TapSet &taps, double theta,
                                    std::span<const double> freq_grid)
{
    const double th[1] = {theta};
    return response_grid(cfg, taps, th, freq_grid);
}

std::vector<double> beam_pattern(const ArrayConfig &cfg, const TapSet &taps, double freq_hz,
                                 std::span<const double> theta_grid)
{
    const double f[1] = {freq_hz};
    return response_grid(cfg, taps, theta_grid, f);
}

namespace
{

// Normalized broadside array factor |sum a_n|^2 / N^2.
double broadside_pattern(const ArrayConfig &cfg, double freq_hz, double theta)
{
    const double step = kTwoPi * cfg.spacing_m * freq_hz * std::sin(theta) / kSpeedOfLight;
    double re = 0.0, im = 0.0;
    for (std::size_t n = 0; n < cfg.n_elements; ++n)
    {
        re += std::cos(step * static_cast<double>(n));
        im -= std::sin(step * static_cast<double>(n));
    }
    const double nn = static_cast<double>(cfg.n_elements);
    return (re * re + im * im) / (nn * nn);
}

// Half-power crossing on one side of broadside; direction is +1 or -1.
double half_power_edge(const ArrayConfig &cfg, double freq_hz, double direction)
{
    constexpr double scan_step = 1e-4;
    constexpr double tol = 1e-6;
    double inside = 0.0;
    double outside = std::numeric_limits<double>::quiet_NaN();
    for (double t = scan_step; t <= kPi / 2 + 1e-12; t += scan_step)
    {
        if (broadside_pattern(cfg, freq_hz, direction * t) < 0.5)
        {
            outside = t;
            break;
        }
        inside = t;
    }
    if (std::isnan(outside))
        return kPi / 2;
    while (outside - inside > tol)
    {
        const double mid = 0.5 * (inside + outside);
        if (broadside_pattern(cfg, freq_hz, direction * mid) >= 0.5)
            inside = mid;
        else
            outside = mid;
    }
    return 0.5 * (inside + outside);
}

} // namespace

double hpbw(const ArrayConfig &cfg, double freq_hz)
{
    if (cfg.n_elements < 2)
        throw ConfigError("hpbw needs at least 2 elements");
    return half_power_edge(cfg, freq_hz, +1.0) + half_power_edge(cfg, freq_hz, -1.0);
}

double squint_loss(const ArrayConfig &cfg, std::size_t n_elements, double theta, double freq_hz)
{
    // Residual phase per element: 2 pi (n-1) d (f - f_c) sin(theta) / c.
    const double step = kTwoPi * cfg.spacing_m * (freq_hz - cfg.carrier_hz) * std::sin(theta) / kSpeedOfLight;
    double re = 0.0, im = 0.0;
    for (std::size_t n = 0; n < n_elements; ++n)
    {
        re += std::cos(step * static_cast<double>(n));
        im += std::sin(step * static_cast<double>(n));
    }
    const double g = re * re + im * im;
    const double nn = static_cast<double>(n_elements);
    if (g <= 0.0)
        return std::numeric_limits<double>::infinity();
    return std::max(0.0, pow2db(nn * nn / g));
}

} // namespace ttdssp
