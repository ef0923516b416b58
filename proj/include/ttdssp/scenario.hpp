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

#include "json.hpp"

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ttdssp
{

enum class Mode
{
    Train,
    Beamform,
    Sweep,
    Squint,
    Evm,
    Iip3,
    Hpbw,
    DumpTaps
};

std::string_view to_string(Mode mode);
Mode mode_from_string(std::string_view name); // throws ConfigError

struct ArraySettings
{
    std::size_t elements = 4;
    double carrier_ghz = 28.0;
    double bandwidth_mhz = 800.0;
    double spacing_wavelengths = 0.5;
    std::optional<double> if_center_mhz; // default: bandwidth / 2

    ArrayConfig config() const;

    bool operator==(const ArraySettings &) const = default;
};

struct ChannelSettings
{
    double theta_deg = 40.0;
    std::optional<double> snr_db;

    bool operator==(const ChannelSettings &) const = default;
};

struct SamplerSettings
{
    unsigned levels = 7;
    double sample_rate_ghz = 0.0; // 0: follow the stimulus
    double delay_resolution_ps = 5.0;
    double delay_range_ns = 3.8;
    double jitter_rms_ps = 0.0;
    std::optional<double> iip3_dbm;
    double reference_impedance_ohm = 50.0;

    // Sampler at `stimulus_rate_hz` unless an explicit rate is set, in which
    // case the two must agree (ConfigError otherwise).
    SamplerConfig config(double stimulus_rate_hz, std::uint64_t seed) const;
    // Rate for tone experiments: the explicit rate, else 2 x bandwidth.
    double tone_rate_hz(const ArrayConfig &cfg) const;

    bool operator==(const SamplerSettings &) const = default;
};

struct OfdmSettings
{
    std::size_t n_subcarriers = 1024;
    double subcarrier_spacing_khz = 960.0;
    std::size_t active_subcarriers = 0; // 0: every bin inside the band
    std::size_t cp_len = 0;             // 0: n_subcarriers / 8
    std::size_t n_symbols = 2;

    OfdmPlan plan(const ArrayConfig &cfg) const;

    bool operator==(const OfdmSettings &) const = default;
};

struct TrainingSettings
{
    unsigned diversity_order = 1;
    double theta_start_deg = -85.0;
    double theta_stop_deg = 85.0;
    double theta_step_deg = 1.0;
    std::size_t mc_trials = 0;
    double mc_snr_db = 10.0;

    std::vector<double> theta_grid_rad() const;

    bool operator==(const TrainingSettings &) const = default;
};

struct BeamformSettings
{
    double span_mhz = 720.0;
    std::size_t points = 73;
    std::size_t n_samples = 16000;
    bool chirp = true;

    bool operator==(const BeamformSettings &) const = default;
};

struct SweepSettings
{
    std::vector<double> probe_deg = {-60.0, -30.0, 0.0, 30.0, 60.0};
    double theta_step_deg = 1.0;

    bool operator==(const SweepSettings &) const = default;
};

struct SquintSettings
{
    double theta_deg = 60.0;
    std::vector<std::size_t> element_counts = {4, 8, 16, 32};
    std::size_t points = 81;

    bool operator==(const SquintSettings &) const = default;
};

struct EvmSettings
{
    unsigned qam_order = 16;
    std::size_t n_symbols = 20;
    std::size_t active_subcarriers = 512;

    bool operator==(const EvmSettings &) const = default;
};

struct Iip3Settings
{
    double f1_mhz = 766.0;
    double f2_mhz = 776.0;
    std::vector<double> input_dbm = {-30.0, -25.0, -20.0};
    std::size_t nfft = 1600;
    std::size_t n_samples = 16000;

    bool operator==(const Iip3Settings &) const = default;
};

struct HpbwSettings
{
    std::vector<std::size_t> element_counts = {2, 4, 8, 16, 32};

    bool operator==(const HpbwSettings &) const = default;
};

/// One experiment description. Serialized as YAML with unit-suffixed keys.
struct Scenario
{
    Mode mode = Mode::Train;
    std::uint64_t seed = 1;
    std::string output_dir = "out";
    ArraySettings array;
    ChannelSettings channel;
    SamplerSettings sampler;
    OfdmSettings ofdm;
    TrainingSettings training;
    BeamformSettings beamform;
    SweepSettings sweep;
    SquintSettings squint;
    EvmSettings evm;
    Iip3Settings iip3;
    HpbwSettings hpbw;

    // Field-level checks; throws ConfigError naming the key.
    void validate() const;

    bool operator==(const Scenario &) const = default;
};

Scenario parse_scenario(std::string_view yaml_text);
Scenario load_scenario(const std::string &path);
std::string to_yaml(const Scenario &s, bool with_output_dir = true);

// Canonical JSON form (sorted keys). The hash covers every field except
// output_dir, so the same experiment hashes equal wherever it is written.
nlohmann::json to_json(const Scenario &s);
std::string scenario_hash(const Scenario &s);

} // namespace ttdssp
