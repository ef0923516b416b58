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

#include "ttdssp/codebook.hpp"

#include "ttdssp/errors.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace ttdssp
{

TapSet training_taps(const ArrayConfig &cfg, unsigned diversity_order)
{
    cfg.validate();
    if (diversity_order < 1)
        throw ConfigError("diversity order must be >= 1");
    TapSet taps;
    taps.mode = SspMode::Training;
    taps.diversity_order = diversity_order;
    taps.delays_s.resize(cfg.n_elements);
    taps.phases_rad.assign(cfg.n_elements, 0.0);
    for (std::size_t n = 0; n < cfg.n_elements; ++n)
        taps.delays_s[n] = static_cast<double>(diversity_order) * static_cast<double>(n) / cfg.bandwidth_hz;
    return taps;
}

TapSet beamforming_taps(const ArrayConfig &cfg, double theta)
{
    cfg.validate();
    if (std::abs(theta) > kPi / 2 + 1e-12)
        throw ConfigError("steering angle outside [-90, 90] degrees");

    const double dt = inter_element_delay(cfg, theta);
    const double last = static_cast<double>(cfg.n_elements - 1) * dt;
    const double offset = std::max(0.0, -last);

    TapSet taps;
    taps.mode = SspMode::Beamforming;
    taps.steering_theta = theta;
    taps.delays_s.resize(cfg.n_elements);
    taps.phases_rad.resize(cfg.n_elements);
    for (std::size_t n = 0; n < cfg.n_elements; ++n)
    {
        const double progressive = static_cast<double>(n) * dt;
        taps.delays_s[n] = progressive + offset;
        taps.phases_rad[n] = wrap_phase(kTwoPi * cfg.lo_hz() * progressive);
    }
    return taps;
}

TapSet quantize(const TapSet &taps, double resolution_s, double range_s)
{
    if (!(resolution_s > 0.0))
        throw ConfigError("delay resolution must be > 0");
    TapSet q = taps;
    for (std::size_t n = 0; n < q.delays_s.size(); ++n)
    {
        const double rounded = std::round(taps.delays_s[n] / resolution_s) * resolution_s;
        // Half a femtosecond of slack absorbs the representation error of k * resolution.
        if (rounded > range_s + 5e-16)
        {
            std::ostringstream msg;
            msg << "element " << n << " delay " << rounded * 1e9 << " ns exceeds delay range " << range_s * 1e9
                << " ns";
            throw SizingError(msg.str(), n);
        }
        q.delays_s[n] = rounded;
    }
    q.quantization = DelayQuantization{resolution_s, range_s};
    return q;
}

double interleave_bracket(const ArrayConfig &cfg, double fov_deg)
{
    if (!(fov_deg > 0.0 && fov_deg <= 180.0))
        throw ConfigError("field of view must be in (0, 180] degrees");
    const double d_over_lambda = cfg.spacing_m / cfg.wavelength_m();
    return d_over_lambda * std::sin(deg2rad(fov_deg) / 2.0) * static_cast<double>(cfg.n_elements - 1) *
           (cfg.bandwidth_hz / cfg.carrier_hz);
}

unsigned min_interleave_levels(const ArrayConfig &cfg, double fov_deg)
{
    return 1u + static_cast<unsigned>(std::floor(interleave_bracket(cfg, fov_deg)));
}

unsigned training_interleave_levels(const ArrayConfig &cfg, double sample_rate_hz, unsigned diversity_order)
{
    if (sample_rate_hz < cfg.bandwidth_hz)
        throw ConfigError("sample rate must be >= bandwidth");
    const double samples = static_cast<double>(diversity_order) * static_cast<double>(cfg.n_elements - 1) *
                           sample_rate_hz / cfg.bandwidth_hz;
    return 1u + static_cast<unsigned>(std::ceil(samples - 1e-9));
}

} // namespace ttdssp
