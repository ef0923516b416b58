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

#include "ttdssp/tap_set.hpp"
#include "ttdssp/ttd_dsp.hpp"
#include "ttdssp/waveform.hpp"

#include "json.hpp"

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace ttdssp::io
{

using json = nlohmann::json;
namespace fs = std::filesystem;

// Lower-case hex SHA-256.
std::string sha256_hex(std::string_view bytes);
std::string sha256_file(const fs::path &path);

/// TapSet document.
///
///     { "mode": "training" | "beamforming", "n_elements": N,
///       "diversity_order": R, "theta_deg": x | null,
///       "delays_ps": [...], "phases_deg": [...],
///       "quantization": {"resolution_ps": r, "range_ps": g} | null,
///       "scenario_hash": "..." }
json tapset_to_json(const TapSet &taps, const std::string &scenario_hash = {});
TapSet tapset_from_json(const json &doc);

struct IqSidecar
{
    double sample_rate_hz = 0.0;
    double center_hz = 0.0;
    std::size_t channels = 0;
    std::size_t samples_per_channel = 0;
    std::uint64_t seed = 0;
    std::string stimulus;
    double theta_deg = 0.0;
    std::optional<double> snr_db;
    std::string scenario_hash;
};

json sidecar_to_json(const IqSidecar &meta);
IqSidecar sidecar_from_json(const json &doc);

// Sidecar path for an I/Q file: "<file>.json".
fs::path sidecar_path(const fs::path &iq_path);

// Little-endian float32 interleaved I/Q, channel-major (all of channel 0,
// then channel 1, ...). Writes the binary and its sidecar.
void write_iq(const fs::path &path, const std::vector<ComplexVector> &channels, const IqSidecar &meta);
void write_iq(const fs::path &path, const MultichannelSignal &signal, const std::string &scenario_hash);
void write_iq(const fs::path &path, const CombinedSignal &signal, const SignalMeta &meta,
              const std::string &scenario_hash);

struct IqFile
{
    IqSidecar meta;
    std::vector<ComplexVector> channels;
};

IqFile read_iq(const fs::path &path);

// First row is the header; numbers in %.12g.
void write_csv(const fs::path &path, const std::vector<std::string> &header,
               const std::vector<std::vector<double>> &rows);

struct CsvTable
{
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

CsvTable read_csv(const fs::path &path);

// Pretty-printed with a trailing newline.
void write_json(const fs::path &path, const json &doc);
json read_json(const fs::path &path);

} // namespace ttdssp::io
