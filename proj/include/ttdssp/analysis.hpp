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
#include "ttdssp/ttd_dsp.hpp"
#include "ttdssp/waveform.hpp"

#include <cstddef>
#include <cstdint>
#include <span>
#include <utility>
#include <vector>

namespace ttdssp
{

// ---- spectra -----------------------------------------------------------

enum class Window
{
    Hann,
    Rectangular
};

struct WelchOptions
{
    std::size_t nfft = 1024;
    std::size_t hop = 0; // 0: nfft / 2
    std::size_t offset = 0;
    Window window = Window::Hann;
};

// Welch-averaged periodogram in FFT bin order. Scaled by 1 / (sum w)^2 so a
// unit-amplitude tone on a bin centre reads 1.0 (0 dB) for either window.
struct Psd
{
    std::vector<double> power;
    double sample_rate_hz = 0.0;
    double center_hz = 0.0;
    std::size_t segments = 0;
    double enbw_bins = 1.0; // equivalent noise bandwidth of the window

    std::size_t nfft() const { return power.size(); }
    double bin_frequency_hz(std::size_t bin) const;
    std::size_t nearest_bin(double freq_hz) const;
    double at(double freq_hz) const { return power[nearest_bin(freq_hz)]; }
    // Total power of the analysed stream (sum of bins over the ENBW).
    double integrated_power() const;
};

Psd psd(std::span<const cd> x, double sample_rate_hz, double center_hz, const WelchOptions &opt);

// Symbol-synchronous power per active subcarrier (active_bins() order),
// averaged over every whole OFDM symbol in the stream. For a unit-modulus
// pilot this is the end-to-end power gain at each subcarrier.
std::vector<double> subcarrier_power(std::span<const cd> x, const OfdmPlan &plan, std::ptrdiff_t cp_start = 0,
                                     std::size_t backoff = 0);

// ---- beam training -----------------------------------------------------

/// Subcarrier <-> angle lookup for rainbow training taps.
///
/// peak_frequency_hz is the sub-bin ridge frequency of the strongest lobe
/// (energy-weighted centroid over +-centroid_half_width subcarriers,
/// re-centred up to centroid_iterations times starting from the argmax);
/// lobe_frequency_hz holds the same for each of the R lobes. Frequencies are
/// baseband, taken modulo BW into [band_low_hz, band_low_hz + BW).
/// estimate_aoa uses the same peak finder.
struct AngleFrequencyMap
{
    std::vector<double> angles_rad;
    std::vector<std::size_t> peak_subcarrier_index;       // argmax, active-subcarrier index
    std::vector<std::vector<std::size_t>> peak_subcarriers; // the R strongest lobes per angle
    std::vector<double> peak_frequency_hz;
    std::vector<std::vector<double>> lobe_frequency_hz;
    std::vector<double> peak_gain;
    std::vector<bool> usable; // peak gain >= N^2 / 2; only these enter the inversion
    unsigned diversity_order = 1;
    std::vector<double> subcarrier_freq_hz; // baseband, per active subcarrier
    double band_low_hz = 0.0;
    double band_width_hz = 0.0;
    std::size_t centroid_half_width = 3;
    unsigned centroid_iterations = 1;

    double fold(double freq_hz) const;

    // Peak subcarrier of the angle nearest broadside.
    std::size_t anchor_index() const;
};

struct RidgePeak
{
    std::size_t index = 0;
    double frequency_hz = 0.0;
};

// Energy-weighted centroid over +-half_width subcarriers around the argmax.
// With iterations > 1 the window is re-centred on the previous centroid
// (mean shift). Frequency offsets are taken modulo band_width_hz, so the
// window wraps across the band edge.
RidgePeak ridge_peak(std::span<const double> power, std::span<const double> freqs_hz, double band_width_hz,
                     std::size_t half_width = 3, unsigned iterations = 1);

// Half of the rainbow lobe's half-power width, in subcarriers:
// 0.443 BW / (R N spacing), at least 3.
std::size_t lobe_half_width(const ArrayConfig &cfg, unsigned diversity_order, double spacing_hz);

// For R = 1 throws MapAmbiguityError listing colliding angles if the sub-bin
// ridge is not one-to-one over the high-gain (>= N^2 / 2) angles.
AngleFrequencyMap build_map(const ArrayConfig &cfg, const TapSet &taps, const OfdmPlan &plan,
                            std::span<const double> theta_grid);

// Angle pairs (radians) that share an integer peak subcarrier.
std::vector<std::pair<double, double>> integer_collisions(const AngleFrequencyMap &map);

struct AoaEstimate
{
    double theta_rad = 0.0;
    std::size_t peak_bin = 0;
    double peak_frequency_hz = 0.0;
    double confidence_db = 0.0; // peak-to-median of the window-averaged PSD
};

// Inverts the map by linear interpolation between table angles.
// Throws NoDetectionError when the PSD, averaged over the centroid window,
// peaks < 3 dB above its median.
AoaEstimate estimate_aoa(std::span<const double> received_power, const AngleFrequencyMap &map);

// The training sounding burst: the pilot symbol repeated back to back, each
// repetition serving as the cyclic prefix of the next (cp_len = 0). The
// burst is periodic in n_subcarriers, so frequency-domain delays act on it
// exactly per subcarrier.
OfdmPlan sounding_plan(const OfdmPlan &plan);

// Sounding burst -> array channel -> combiner -> per-subcarrier power. The
// first repetition is spent as prefix; n_symbols >= 2.
std::vector<double> measure_training_response(const ArrayConfig &cfg, const TapSet &taps, const OfdmPlan &plan,
                                              const ChannelSpec &channel, const SamplerConfig &scfg,
                                              std::size_t n_symbols = 2);

struct Heatmap
{
    std::vector<double> angles_rad;
    std::vector<double> subcarrier_freq_hz;
    std::vector<double> db; // row-major, angles x subcarriers

    std::size_t rows() const { return angles_rad.size(); }
    std::size_t cols() const { return subcarrier_freq_hz.size(); }
    double at(std::size_t row, std::size_t col) const { return db[row * cols() + col]; }
    std::vector<std::size_t> row_argmax() const;
};

// End-to-end measured gain per (angle, subcarrier). OpenMP over rows;
// reference::heatmap is the serial twin.
Heatmap heatmap(const ArrayConfig &cfg, const TapSet &taps, const OfdmPlan &plan, std::span<const double> theta_grid,
                const SamplerConfig &scfg, std::size_t n_symbols = 2);

struct AoaTrialStats
{
    std::size_t trials = 0;
    std::size_t detections = 0;
    double rms_error_rad = 0.0;
    double max_error_rad = 0.0;
};

// Noisy end-to-end AoA trials at one angle; trial t uses seed + t.
AoaTrialStats aoa_monte_carlo(const ArrayConfig &cfg, const TapSet &taps, const OfdmPlan &plan,
                              const AngleFrequencyMap &map, double theta, double snr_db, std::size_t trials,
                              std::uint64_t seed, const SamplerConfig &scfg, std::size_t n_symbols = 2);

// ---- beamforming -------------------------------------------------------

struct GainCurve
{
    std::vector<double> freq_hz; // RF, snapped to the analysis bin grid
    std::vector<double> gain_db;
};

// Matched-tap end-to-end tone gain, N-element output power over
// single-element output power.
GainCurve beamforming_gain(const ArrayConfig &cfg, double theta, std::span<const double> freq_grid_hz,
                           const SamplerConfig &scfg, std::size_t n_samples = 16000);

// Tone power gain through the combiner for arbitrary taps (one tone on an
// FFT bin of an n_samples buffer at RF freq_hz).
double tone_gain(const ArrayConfig &cfg, const TapSet &taps, double theta, double freq_hz, const SamplerConfig &scfg,
                 std::size_t n_samples);

// Wideband chirp through N elements vs one element; PSD ratio per bin
// inside [f_lo, f_hi] (RF).
GainCurve chirp_gain(const ArrayConfig &cfg, double theta, double f_lo_hz, double f_hi_hz, const SamplerConfig &scfg,
                     std::size_t n_samples = 32768, std::size_t nfft = 1024);

// ---- modulation quality -------------------------------------------------

struct EvmReport
{
    double evm_rms_pct = 0.0;
    std::vector<double> per_symbol_error; // |error| / reference rms, percent
    ComplexVector constellation;          // equalized received symbols
    cd equalizer = {1.0, 0.0};
};

// RMS EVM after a single least-squares complex gain. Throws AlignmentError on
// length mismatch or normalized correlation below 0.3.
EvmReport evm(std::span<const cd> received, std::span<const cd> reference);

// ---- linearity ---------------------------------------------------------

struct TwoToneMeasurement
{
    double input_dbm_per_tone = 0.0;
    Psd output;
};

struct Iip3Result
{
    bool detected = false;
    double iip3_dbm = 0.0; // +infinity when no IM3 product is found
    double im3_slope = 0.0;
    bool slope_warning = false;
    std::vector<double> fundamental_dbm;
    std::vector<double> im3_dbm;
    std::vector<double> point_iip3_dbm;
};

// IIP3 = P_in + (P_fund - P_IM3) / 2 at the lowest usable input level; IM3
// must sit >= 10 dB above the noise floor. Slope of IM3 vs P_in is fitted
// over all usable points and flagged outside [2.5, 3.5].
Iip3Result extract_iip3(std::span<const TwoToneMeasurement> sweep, double f1_hz, double f2_hz);

// Runs a single-element two-tone sweep through the sampler model.
std::vector<TwoToneMeasurement> two_tone_sweep(const SamplerConfig &scfg, double f1_hz, double f2_hz,
                                               std::span<const double> input_dbm_per_tone, double center_hz,
                                               std::size_t nfft = 1600, std::size_t n_samples = 16000);

} // namespace ttdssp
