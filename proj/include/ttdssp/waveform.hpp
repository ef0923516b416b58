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

#include "ttdssp/array_core.hpp"
#include "ttdssp/types.hpp"

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace ttdssp
{

/// OFDM grid in FFT order.
///
/// Bin k of the n_subcarriers-point transform sits at the frequency
/// congruent to k * spacing inside the Nyquist zone centred at center_hz.
/// pilot_values holds one unit-modulus value per active bin, in the order
/// returned by active_bins() (ascending frequency).
struct OfdmPlan
{
    std::size_t n_subcarriers = 1024;
    double subcarrier_spacing_hz = 960e3;
    std::vector<bool> active_mask;
    std::size_t cp_len = 128;
    ComplexVector pilot_values;
    double center_hz = 0.0;

    double sample_rate_hz() const { return static_cast<double>(n_subcarriers) * subcarrier_spacing_hz; }
    std::size_t symbol_length() const { return n_subcarriers + cp_len; }
    std::size_t n_active() const;
    double bin_frequency_hz(std::size_t bin) const;
    std::vector<std::size_t> active_bins() const;
    double occupied_bandwidth_hz() const;

    void validate() const;
    void validate(const ArrayConfig &cfg) const;

    // Grid whose active bins fill the array band [if - BW/2, if + BW/2).
    // max_active > 0 keeps only that many bins closest to the band centre.
    // cp_len == 0 selects n_subcarriers / 8.
    static OfdmPlan for_band(const ArrayConfig &cfg, std::size_t n_subcarriers = 1024,
                             double spacing_hz = 960e3, std::size_t cp_len = 0, std::size_t max_active = 0);
};

struct SignalMeta
{
    std::string stimulus;
    double theta_rad = 0.0;
    std::optional<double> snr_db;
    std::uint64_t seed = 0;
};

/// One complex-baseband stream per antenna element.
struct MultichannelSignal
{
    double sample_rate_hz = 0.0;
    double center_hz = 0.0;
    std::vector<ComplexVector> channels;
    SignalMeta meta;

    std::size_t n_channels() const { return channels.size(); }
    std::size_t length() const { return channels.empty() ? 0 : channels.front().size(); }
    void validate() const;
};

struct ChannelSpec
{
    double theta_rad = 0.0;
    std::optional<double> snr_db; // nullopt: noiseless
    std::uint64_t seed = 1;
};

// Repeats the plan's pilot symbol n_symbols times (CP included); unit power.
ComplexVector gen_ofdm(const OfdmPlan &plan, std::size_t n_symbols);

// Modulates one vector of active-bin values per OFDM symbol. Unit-power
// constellations give a unit-power stream.
ComplexVector ofdm_modulate(const OfdmPlan &plan, std::span<const ComplexVector> symbols);

// Inverse of ofdm_modulate. `cp_start` is the stream index where the cyclic
// prefix of symbol 0 begins (negative when leading samples were trimmed).
// The FFT window is taken `backoff` samples early inside the prefix and the
// resulting linear phase is removed.
std::vector<ComplexVector> ofdm_demodulate(const OfdmPlan &plan, std::span<const cd> stream, std::size_t n_symbols,
                                           std::ptrdiff_t cp_start = 0, std::size_t backoff = 0);

ComplexVector gen_tone(double freq_hz, double sample_rate_hz, std::size_t n_samples, double center_hz = 0.0);
ComplexVector gen_two_tone(double f1_hz, double f2_hz, double sample_rate_hz, std::size_t n_samples,
                           double center_hz = 0.0);
// Linear chirp sweeping f_lo at the first sample to f_hi at the last.
ComplexVector gen_chirp(double f_lo_hz, double f_hi_hz, double sample_rate_hz, std::size_t n_samples,
                        double center_hz = 0.0);

// Gray-coded square QAM, unit average power. order is 4 or 16.
cd qam_map(unsigned order, unsigned index);
unsigned qam_demap(unsigned order, cd point);

struct QamFrame
{
    unsigned order = 4;
    ComplexVector stream;
    std::vector<std::vector<unsigned>> indices; // per OFDM symbol, per active bin
    std::vector<ComplexVector> symbols;         // reference constellation points
};

QamFrame gen_qam(unsigned order, std::size_t n_symbols, const OfdmPlan &plan, std::uint64_t seed);

/// Plane wave from theta onto the array.
///
/// Element n (0-based) sees the stimulus advanced by n * dt, dt = d sin(theta) / c,
/// as the exact phase ramp exp(+j 2 pi f_bb n dt) together with the LO term
/// exp(+j 2 pi f_LO n dt); i.e. channel spectra are S(f) conj(a_n(theta, f)).
/// Complex white Gaussian noise is added per element at snr_db.
MultichannelSignal apply_channel(std::span<const cd> stimulus, double sample_rate_hz, const ArrayConfig &cfg,
                                 const ChannelSpec &spec);

// Mean |x|^2.
double mean_power(std::span<const cd> x);

} // namespace ttdssp
