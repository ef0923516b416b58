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

#include "ttdssp/analysis.hpp"
#include "ttdssp/array_core.hpp"
#include "ttdssp/ttd_dsp.hpp"

#include <span>
#include <vector>

// Straight-line serial versions of the parallel kernels. Used as test
// oracles and as the baseline in the benchmarks.
namespace ttdssp::reference
{

// Builds the weight vector and steering vector per (theta, f) and forms
// |W^H a|^2 directly.
std::vector<double> response_grid(const ArrayConfig &cfg, const TapSet &taps, std::span<const double> thetas,
                                  std::span<const double> freqs);

CombinedSignal delay_and_combine(const MultichannelSignal &signal, const TapSet &taps, const SamplerConfig &scfg);

Heatmap heatmap(const ArrayConfig &cfg, const TapSet &taps, const OfdmPlan &plan, std::span<const double> theta_grid,
                const SamplerConfig &scfg, std::size_t n_symbols = 2);

} // namespace ttdssp::reference
