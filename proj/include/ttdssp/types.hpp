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

#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

namespace ttdssp
{

using cd = std::complex<double>;
using ComplexVector = std::vector<cd>;

inline constexpr double kSpeedOfLight = 299'792'458.0;
inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

inline constexpr double deg2rad(double deg) { return deg * kPi / 180.0; }
inline constexpr double rad2deg(double rad) { return rad * 180.0 / kPi; }

inline double pow2db(double p) { return 10.0 * std::log10(p); }
inline double db2pow(double db) { return std::pow(10.0, db / 10.0); }

// Wraps an angle into [0, 2*pi).
inline double wrap_phase(double rad)
{
    double w = std::fmod(rad, kTwoPi);
    return w < 0.0 ? w + kTwoPi : w;
}

// Wraps x into [-period/2, period/2).
inline double wrap_centered(double x, double period)
{
    return x - period * std::floor(x / period + 0.5);
}

} // namespace ttdssp
