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

#include "ttdssp/fft.hpp"

#include <fftw3.h>

#include <map>
#include <mutex>
#include <utility>

namespace ttdssp::fft
{
namespace
{

std::mutex plan_mutex;

fftw_plan get_plan(std::size_t n, int sign)
{
    static std::map<std::pair<std::size_t, int>, fftw_plan> cache;
    std::lock_guard<std::mutex> lock(plan_mutex);
    auto key = std::make_pair(n, sign);
    auto it = cache.find(key);
    if (it != cache.end())
        return it->second;

    // Planning scratch only; execution uses the new-array interface.
    fftw_complex *in = fftw_alloc_complex(n);
    fftw_complex *out = fftw_alloc_complex(n);
    fftw_plan p = fftw_plan_dft_1d(static_cast<int>(n), in, out, sign, FFTW_ESTIMATE | FFTW_UNALIGNED);
    fftw_free(in);
    fftw_free(out);
    cache.emplace(key, p);
    return p;
}

ComplexVector execute(std::span<const cd> x, int sign)
{
    ComplexVector in(x.begin(), x.end());
    ComplexVector out(x.size());
    if (x.empty())
        return out;
    fftw_plan p = get_plan(x.size(), sign);
    fftw_execute_dft(p, reinterpret_cast<fftw_complex *>(in.data()), reinterpret_cast<fftw_complex *>(out.data()));
    return out;
}

} // namespace

ComplexVector forward(std::span<const cd> x)
{
    return execute(x, FFTW_FORWARD);
}

ComplexVector inverse(std::span<const cd> x)
{
    ComplexVector y = execute(x, FFTW_BACKWARD);
    const double scale = y.empty() ? 1.0 : 1.0 / static_cast<double>(y.size());
    for (auto &v : y)
        v *= scale;
    return y;
}

double zone_frequency(std::size_t bin, std::size_t n, double fs, double center_hz)
{
    const double f = static_cast<double>(bin) * fs / static_cast<double>(n);
    const double lo = center_hz - 0.5 * fs;
    return f - fs * std::floor((f - lo) / fs + 1e-12);
}

ComplexVector circular_delay(std::span<const cd> x, double delay_s, double fs, double center_hz)
{
    if (delay_s == 0.0 || x.empty())
        return ComplexVector(x.begin(), x.end());
    ComplexVector X = forward(x);
    const std::size_t n = X.size();
    for (std::size_t k = 0; k < n; ++k)
    {
        const double f = zone_frequency(k, n, fs, center_hz);
        X[k] *= std::polar(1.0, -kTwoPi * f * delay_s);
    }
    return inverse(X);
}

ComplexVector derivative(std::span<const cd> x, double fs, double center_hz)
{
    ComplexVector X = forward(x);
    const std::size_t n = X.size();
    for (std::size_t k = 0; k < n; ++k)
        X[k] *= cd(0.0, kTwoPi * zone_frequency(k, n, fs, center_hz));
    return inverse(X);
}

} // namespace ttdssp::fft
