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
#include "ttdssp/tap_set.hpp"

namespace ttdssp
{

// Hardware delay resolution and range of the prototype delay line.
inline constexpr double kDefaultDelayResolution = 5e-12;
inline constexpr double kDefaultDelayRange = 3.8e-9;

// Time-interleaved sampler organization for one element.
struct InterleavePlan
{
    unsigned levels = 7;
    double sample_rate_hz = 1.6e9;

    double per_level_rate_hz() const { return sample_rate_hz / levels; }
    // Longest delay the interleave can hold, (M - 1) / f_s.
    double span_s() const { return static_cast<double>(levels - 1) / sample_rate_hz; }
};

// Rainbow training taps tau_n = R (n-1) / BW with zero phase.
TapSet training_taps(const ArrayConfig &cfg, unsigned diversity_order = 1);

// Squint-free taps steering to theta. Delays are referenced to the element
// that needs the least delay so all are >= 0; the phases carry the LO term.
TapSet beamforming_taps(const ArrayConfig &cfg, double theta);

// Rounds every delay to the nearest multiple of resolution_s.
// Throws SizingError naming the first element whose delay exceeds range_s.
TapSet quantize(const TapSet &taps, double resolution_s = kDefaultDelayResolution,
                double range_s = kDefaultDelayRange);

// The bracketed term (d/lambda) sin(fov/2) (N-1) (BW/f_c) of the interleave
// sizing rule; sin(60 deg) = sqrt(3)/2 at the usual 120 degree field of view.
double interleave_bracket(const ArrayConfig &cfg, double fov_deg = 120.0);

// M = 1 + floor(interleave_bracket).
unsigned min_interleave_levels(const ArrayConfig &cfg, double fov_deg = 120.0);

// Smallest M with (M - 1) / f_s >= R (N - 1) / BW.
unsigned training_interleave_levels(const ArrayConfig &cfg, double sample_rate_hz, unsigned diversity_order = 1);

} // namespace ttdssp
