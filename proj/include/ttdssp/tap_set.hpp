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

#include <cstddef>
#include <optional>
#include <string_view>
#include <vector>

namespace ttdssp
{

enum class SspMode
{
    Training,
    Beamforming
};

std::string_view to_string(SspMode mode);

struct DelayQuantization
{
    double resolution_s = 0.0;
    double range_s = 0.0;
};

// Per-element delay and phase weights for one SSP mode. Element n applies
// w_n(f) = exp(-j (2 pi f_bb tau_n + phi_n)) at baseband frequency f_bb.
struct TapSet
{
    SspMode mode = SspMode::Training;
    std::vector<double> delays_s;
    std::vector<double> phases_rad;
    unsigned diversity_order = 1;          // training only
    std::optional<double> steering_theta;  // beamforming only, radians
    std::optional<DelayQuantization> quantization;

    std::size_t size() const { return delays_s.size(); }
};

} // namespace ttdssp
