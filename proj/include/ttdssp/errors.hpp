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
#include <stdexcept>
#include <string>

namespace ttdssp
{

// Invalid or inconsistent configuration (dimension mismatch, bad field value).
class ConfigError : public std::invalid_argument
{
  public:
    using std::invalid_argument::invalid_argument;
};

// A tap cannot be realized by the delay hardware (range, interleave span).
class SizingError : public std::runtime_error
{
  public:
    SizingError(const std::string &what, std::size_t element)
        : std::runtime_error(what), element_(element) {}

    std::size_t element() const noexcept { return element_; }

  private:
    std::size_t element_;
};

// No usable spectral lobe in a received PSD.
class NoDetectionError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Received and reference sequences do not correlate.
class AlignmentError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

// Frequency-to-angle map is not one-to-one over the probed angles.
class MapAmbiguityError : public std::runtime_error
{
  public:
    using std::runtime_error::runtime_error;
};

} // namespace ttdssp
