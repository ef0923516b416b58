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

#pragma once

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <vector>

// Straight scalar formulas, written independently of the library.
namespace oracle
{

using cplx = std::complex<double>;
constexpr double c0 = 299792458.0;
constexpr double pi = std::numbers::pi;

inline cplx steering_entry(std::size_t n, double spacing_m, double freq_hz, double theta)
{
    const double phase = 2.0 * pi * static_cast<double>(n) * spacing_m * freq_hz * std::sin(theta) / c0;
    return {std::cos(phase), -std::sin(phase)};
}

// |sum conj(w_n) a_n|^2, w_n = exp(-j (2 pi f_bb tau_n + phi_n)), f_bb = f - (f_c - f_if).
inline double gain(double spacing_m, double carrier_hz, double if_hz, const std::vector<double> &delays,
                   const std::vector<double> &phases, double theta, double freq_hz)
{
    const double f_bb = freq_hz - (carrier_hz - if_hz);
    cplx acc = 0.0;
    for (std::size_t n = 0; n < delays.size(); ++n)
    {
        const double wp = -(2.0 * pi * f_bb * delays[n] + phases[n]);
        const cplx w{std::cos(wp), std::sin(wp)};
        acc += std::conj(w) * steering_entry(n, spacing_m, freq_hz, theta);
    }
    return std::norm(acc);
}

// Matched broadside pattern |sum_n a_n|^2 for N elements.
inline double broadside(std::size_t n_elements, double spacing_m, double freq_hz, double theta)
{
    cplx acc = 0.0;
    for (std::size_t n = 0; n < n_elements; ++n)
        acc += steering_entry(n, spacing_m, freq_hz, theta);
    return std::norm(acc);
}

// Mainlobe width from a dense grid: first angle on each side where the
// pattern drops below half of its broadside value.
inline double hpbw_grid(std::size_t n_elements, double spacing_m, double freq_hz, double step)
{
    const double peak = broadside(n_elements, spacing_m, freq_hz, 0.0);
    double edge = pi / 2;
    for (double t = 0.0; t <= pi / 2; t += step)
        if (broadside(n_elements, spacing_m, freq_hz, t) < 0.5 * peak)
        {
            edge = t - 0.5 * step;
            break;
        }
    return 2.0 * edge;
}

inline std::vector<cplx> dft(const std::vector<cplx> &x)
{
    const std::size_t n = x.size();
    std::vector<cplx> out(n);
    for (std::size_t k = 0; k < n; ++k)
    {
        cplx acc = 0.0;
        for (std::size_t t = 0; t < n; ++t)
        {
            const double ph = -2.0 * pi * static_cast<double>((k * t) % n) / static_cast<double>(n);
            acc += x[t] * cplx{std::cos(ph), std::sin(ph)};
        }
        out[k] = acc;
    }
    return out;
}

// Power of the component at freq_hz (exact for a tone on a DFT bin).
inline double tone_power(const std::vector<cplx> &x, double freq_hz, double fs)
{
    cplx acc = 0.0;
    for (std::size_t t = 0; t < x.size(); ++t)
    {
        const double ph = -2.0 * pi * freq_hz * static_cast<double>(t) / fs;
        acc += x[t] * cplx{std::cos(ph), std::sin(ph)};
    }
    const double n = static_cast<double>(x.size());
    return std::norm(acc) / (n * n);
}

inline double power(const std::vector<cplx> &x)
{
    double acc = 0.0;
    for (const auto &v : x)
        acc += std::norm(v);
    return acc / static_cast<double>(x.size());
}

inline double db(double p) { return 10.0 * std::log10(p); }

} // namespace oracle
