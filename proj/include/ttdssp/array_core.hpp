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

#include "ttdssp/tap_set.hpp"
#include "ttdssp/types.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace ttdssp
{

/// Uniform linear array geometry and RF plan.
///
/// RF frequency f maps to complex baseband f_bb = f - carrier_hz + if_center_hz,
/// i.e. the downconversion LO sits at carrier_hz - if_center_hz. The default
/// places the band at [0, BW) in baseband.
struct ArrayConfig
{
    std::size_t n_elements = 4;
    double spacing_m = kSpeedOfLight / (2.0 * 28e9);
    double carrier_hz = 28e9;
    double bandwidth_hz = 800e6;
    double if_center_hz = 400e6;

    // Half-wavelength spacing at the carrier, IF centre at BW/2.
    static ArrayConfig critical(std::size_t n_elements, double carrier_hz = 28e9, double bandwidth_hz = 800e6);

    double wavelength_m() const { return kSpeedOfLight / carrier_hz; }
    double lo_hz() const { return carrier_hz - if_center_hz; }
    double to_baseband(double rf_hz) const { return rf_hz - lo_hz(); }
    double to_rf(double bb_hz) const { return bb_hz + lo_hz(); }
    double band_low_hz() const { return carrier_hz - 0.5 * bandwidth_hz; }
    double band_high_hz() const { return carrier_hz + 0.5 * bandwidth_hz; }
    bool critically_spaced() const;

    // Throws ConfigError on violated invariants.
    void validate() const;
};

// sin(theta) / (2 f_c): inter-element delay of a critically spaced array.
double inter_element_delay(double theta, double carrier_hz);

// d sin(theta) / c for arbitrary spacing.
double inter_element_delay(const ArrayConfig &cfg, double theta);

// [a(theta, f)]_n = exp(-j 2 pi (n-1) d f sin(theta) / c), n = 1..N.
ComplexVector steering_vector(const ArrayConfig &cfg, double theta, double freq_hz);

// |W^H(f) a(theta, f)|^2 for a single (theta, f) pair.
double array_gain(const ArrayConfig &cfg, const TapSet &taps, double theta, double freq_hz);

// Linear power gain over an RF frequency grid inside the array band.
std::vector<double> system_response(const ArrayConfig &cfg, const TapSet &taps, double theta,
                                    std::span<const double> freq_grid);

// System response across angles at one RF frequency.
std::vector<double> beam_pattern(const ArrayConfig &cfg, const TapSet &taps, double freq_hz,
                                 std::span<const double> theta_grid);

// Angle-by-frequency gain matrix (row-major, thetas.size() x freqs.size()).
// OpenMP kernel; reference::response_grid is the serial twin.
std::vector<double> response_grid(const ArrayConfig &cfg, const TapSet &taps, std::span<const double> thetas,
                                  std::span<const double> freqs);

// Half-power beamwidth (radians) of the broadside matched beam at freq_hz.
double hpbw(const ArrayConfig &cfg, double freq_hz);

// Gain deficit (dB, >= 0) of narrowband phase-shifter weights matched at the
// carrier when evaluated at freq_hz. Uses n_elements instead of cfg.n_elements.
double squint_loss(const ArrayConfig &cfg, std::size_t n_elements, double theta, double freq_hz);

} // namespace ttdssp
