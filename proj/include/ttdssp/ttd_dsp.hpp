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

#include "ttdssp/codebook.hpp"
#include "ttdssp/tap_set.hpp"
#include "ttdssp/waveform.hpp"

#include <cstdint>
#include <optional>
#include <span>

namespace ttdssp
{

struct SamplerConfig
{
    InterleavePlan plan;
    double delay_resolution_s = kDefaultDelayResolution; // 0: delays used as given
    double delay_range_s = kDefaultDelayRange;
    double jitter_rms_s = 0.0;
    std::uint64_t jitter_seed = 7;
    std::optional<double> iip3_dbm; // nullopt: linear
    double reference_impedance_ohm = 50.0;

    void validate() const;
};

struct CombinedSignal
{
    double sample_rate_hz = 0.0;
    double center_hz = 0.0;
    ComplexVector samples;
    TapSet applied_taps;
    std::size_t latency_samples = 0;
    bool nonlinearity_warning = false;
};

/// Multiply-and-accumulate combining of the per-element streams.
///
/// Each element is (optionally) jittered, delayed by its quantized tau_n (the
/// whole-sample part as a shift, the remainder as an exact frequency-domain
/// phase ramp), rotated by exp(-j phi_n), (optionally) compressed by the cubic
/// model and summed without normalization. Output sample j corresponds to
/// input time j + latency_samples, latency_samples = max whole-sample shift.
CombinedSignal delay_and_combine(const MultichannelSignal &signal, const TapSet &taps, const SamplerConfig &scfg);

// Quantizes per the sampler and checks range and interleave span.
TapSet realize_taps(const TapSet &taps, const SamplerConfig &scfg);

struct NonlinearOutput
{
    ComplexVector samples;
    bool warning = false; // input within 10 dB of IIP3
};

// Peak envelope amplitude of one tone at the given power (1.0 <=> 0 dBm).
double dbm_to_amplitude(double dbm);
double amplitude_to_dbm(double amplitude);
// Volts per normalized unit across `impedance_ohm` (unit power <=> 1 mW).
double volts_per_unit(double impedance_ohm);

/// Memoryless third-order compression on the complex envelope,
/// y = x - x |x|^2 / A^2 with A the per-tone amplitude at IIP3. The
/// envelope form of the real cubic x - (4/3) x^3 / A^2, so a two-tone test
/// extrapolates to IIP3 = iip3_dbm.
NonlinearOutput apply_nonlinearity(std::span<const cd> x, std::optional<double> iip3_dbm,
                                   double impedance_ohm = 50.0);

// Sampling-instant jitter with i.i.d. Gaussian timing error of rms sigma,
// first order in the timing error: y = x + delta * dx/dt.
ComplexVector apply_jitter(std::span<const cd> x, double sample_rate_hz, double center_hz, double jitter_rms_s,
                           std::uint64_t seed);

} // namespace ttdssp
