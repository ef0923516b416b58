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

#include "ttdssp/types.hpp"

#include <cstddef>
#include <span>

// Thin FFTW wrapper. Plans are cached per length and direction; execution
// is re-entrant so kernels may call these from inside OpenMP regions.
namespace ttdssp::fft
{

// Unnormalized forward DFT, X[k] = sum x[n] exp(-j 2 pi k n / N).
ComplexVector forward(std::span<const cd> x);

// Inverse DFT including the 1/N factor.
ComplexVector inverse(std::span<const cd> x);

// Frequency of DFT bin `bin` of an N-point transform of a complex stream at
// rate fs whose Nyquist zone is [center_hz - fs/2, center_hz + fs/2).
double zone_frequency(std::size_t bin, std::size_t n, double fs, double center_hz);

// Circular delay by `delay_s` applied as exp(-j 2 pi f delay) on the zone
// frequencies. Exact for streams that are periodic over their length.
ComplexVector circular_delay(std::span<const cd> x, double delay_s, double fs, double center_hz);

// Time derivative (1/s) of the band-limited periodic interpolant.
ComplexVector derivative(std::span<const cd> x, double fs, double center_hz);

} // namespace ttdssp::fft
