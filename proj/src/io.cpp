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

#include "ttdssp/io.hpp"

#include "ttdssp/errors.hpp"
#include "ttdssp/types.hpp"

#include <openssl/evp.h>

#include <bit>
#include <cstdio>
#include <cstring>
#include <fstream>
#include <iterator>
#include <sstream>

namespace ttdssp::io
{

std::string sha256_hex(std::string_view bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw std::runtime_error("SHA-256 digest failed");
    static constexpr char hex[] = "0123456789abcdef";
    std::string out;
    out.reserve(2 * len);
    for (unsigned int i = 0; i < len; ++i)
    {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 0xf]);
    }
    return out;
}

namespace
{

std::string slurp(const fs::path &path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open " + path.string());
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void spill(const fs::path &path, std::string_view data)
{
    if (path.has_parent_path())
        fs::create_directories(path.parent_path());
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot write " + path.string());
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

std::uint32_t to_le(std::uint32_t v)
{
    if constexpr (std::endian::native == std::endian::big)
        return ((v & 0xffu) << 24) | ((v & 0xff00u) << 8) | ((v >> 8) & 0xff00u) | (v >> 24);
    return v;
}

} // namespace

std::string sha256_file(const fs::path &path)
{
    return sha256_hex(slurp(path));
}

json tapset_to_json(const TapSet &taps, const std::string &scenario_hash)
{
    json doc;
    doc["mode"] = std::string(to_string(taps.mode));
    doc["n_elements"] = taps.size();
    doc["diversity_order"] = taps.diversity_order;
    doc["theta_deg"] = taps.steering_theta ? json(rad2deg(*taps.steering_theta)) : json(nullptr);
    json d = json::array();
    json p = json::array();
    for (std::size_t n = 0; n < taps.size(); ++n)
    {
        d.push_back(taps.delays_s[n] * 1e12);
        p.push_back(rad2deg(taps.phases_rad[n]));
    }
    doc["delays_ps"] = d;
    doc["phases_deg"] = p;
    if (taps.quantization)
        doc["quantization"] = {{"resolution_ps", taps.quantization->resolution_s * 1e12},
                               {"range_ps", taps.quantization->range_s * 1e12}};
    else
        doc["quantization"] = nullptr;
    doc["scenario_hash"] = scenario_hash;
    return doc;
}

TapSet tapset_from_json(const json &doc)
{
    try
    {
        TapSet t;
        const auto mode = doc.at("mode").get<std::string>();
        if (mode == "training")
            t.mode = SspMode::Training;
        else if (mode == "beamforming")
            t.mode = SspMode::Beamforming;
        else
            throw ConfigError("taps.mode: unknown mode '" + mode + "'");
        t.diversity_order = doc.value("diversity_order", 1u);
        if (doc.contains("theta_deg") && !doc["theta_deg"].is_null())
            t.steering_theta = deg2rad(doc["theta_deg"].get<double>());
        for (double v : doc.at("delays_ps"))
            t.delays_s.push_back(v * 1e-12);
        for (double v : doc.at("phases_deg"))
            t.phases_rad.push_back(deg2rad(v));
        if (t.delays_s.size() != t.phases_rad.size())
            throw ConfigError("taps: delays_ps and phases_deg differ in length");
        if (doc.contains("n_elements") && doc["n_elements"].get<std::size_t>() != t.size())
            throw ConfigError("taps.n_elements does not match delays_ps");
        if (doc.contains("quantization") && !doc["quantization"].is_null())
            t.quantization = DelayQuantization{doc["quantization"].at("resolution_ps").get<double>() * 1e-12,
                                               doc["quantization"].at("range_ps").get<double>() * 1e-12};
        return t;
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("taps document: ") + e.what());
    }
}

json sidecar_to_json(const IqSidecar &m)
{
    return {{"format", "cf32le"},
            {"layout", "channel-major"},
            {"sample_rate_hz", m.sample_rate_hz},
            {"center_hz", m.center_hz},
            {"channels", m.channels},
            {"samples_per_channel", m.samples_per_channel},
            {"seed", m.seed},
            {"stimulus", m.stimulus},
            {"theta_deg", m.theta_deg},
            {"snr_db", m.snr_db ? json(*m.snr_db) : json(nullptr)},
            {"scenario_hash", m.scenario_hash}};
}

IqSidecar sidecar_from_json(const json &doc)
{
    try
    {
        if (doc.value("format", std::string("cf32le")) != "cf32le")
            throw ConfigError("iq sidecar: unsupported format");
        IqSidecar m;
        m.sample_rate_hz = doc.at("sample_rate_hz").get<double>();
        m.center_hz = doc.value("center_hz", 0.0);
        m.channels = doc.at("channels").get<std::size_t>();
        m.samples_per_channel = doc.at("samples_per_channel").get<std::size_t>();
        m.seed = doc.value("seed", std::uint64_t{0});
        m.stimulus = doc.value("stimulus", std::string());
        m.theta_deg = doc.value("theta_deg", 0.0);
        if (doc.contains("snr_db") && !doc["snr_db"].is_null())
            m.snr_db = doc["snr_db"].get<double>();
        m.scenario_hash = doc.value("scenario_hash", std::string());
        return m;
    }
    catch (const json::exception &e)
    {
        throw ConfigError(std::string("iq sidecar: ") + e.what());
    }
}

fs::path sidecar_path(const fs::path &iq_path)
{
    fs::path p = iq_path;
    p += ".json";
    return p;
}

void write_iq(const fs::path &path, const std::vector<ComplexVector> &channels, const IqSidecar &meta)
{
    std::string buf;
    std::size_t total = 0;
    for (const auto &ch : channels)
    {
        if (ch.size() != channels.front().size())
            throw ConfigError("iq channels differ in length");
        total += ch.size();
    }
    buf.resize(total * 8);
    std::size_t pos = 0;
    for (const auto &ch : channels)
        for (const cd &v : ch)
        {
            const std::uint32_t re = to_le(std::bit_cast<std::uint32_t>(static_cast<float>(v.real())));
            const std::uint32_t im = to_le(std::bit_cast<std::uint32_t>(static_cast<float>(v.imag())));
            std::memcpy(buf.data() + pos, &re, 4);
            std::memcpy(buf.data() + pos + 4, &im, 4);
            pos += 8;
        }
    spill(path, buf);
    IqSidecar side = meta;
    side.channels = channels.size();
    side.samples_per_channel = channels.empty() ? 0 : channels.front().size();
    write_json(sidecar_path(path), sidecar_to_json(side));
}

void write_iq(const fs::path &path, const MultichannelSignal &signal, const std::string &scenario_hash)
{
    IqSidecar m;
    m.sample_rate_hz = signal.sample_rate_hz;
    m.center_hz = signal.center_hz;
    m.channels = signal.n_channels();
    m.samples_per_channel = signal.length();
    m.seed = signal.meta.seed;
    m.stimulus = signal.meta.stimulus;
    m.theta_deg = rad2deg(signal.meta.theta_rad);
    m.snr_db = signal.meta.snr_db;
    m.scenario_hash = scenario_hash;
    write_iq(path, signal.channels, m);
}

void write_iq(const fs::path &path, const CombinedSignal &signal, const SignalMeta &meta,
              const std::string &scenario_hash)
{
    IqSidecar m;
    m.sample_rate_hz = signal.sample_rate_hz;
    m.center_hz = signal.center_hz;
    m.channels = 1;
    m.samples_per_channel = signal.samples.size();
    m.seed = meta.seed;
    m.stimulus = meta.stimulus;
    m.theta_deg = rad2deg(meta.theta_rad);
    m.snr_db = meta.snr_db;
    m.scenario_hash = scenario_hash;
    write_iq(path, std::vector<ComplexVector>{signal.samples}, m);
}

IqFile read_iq(const fs::path &path)
{
    IqFile f;
    f.meta = sidecar_from_json(read_json(sidecar_path(path)));
    const std::string buf = slurp(path);
    if (buf.size() != f.meta.channels * f.meta.samples_per_channel * 8)
        throw ConfigError("iq file " + path.string() + " size does not match its sidecar");
    std::size_t pos = 0;
    f.channels.assign(f.meta.channels, ComplexVector(f.meta.samples_per_channel));
    for (auto &ch : f.channels)
        for (auto &v : ch)
        {
            std::uint32_t re = 0;
            std::uint32_t im = 0;
            std::memcpy(&re, buf.data() + pos, 4);
            std::memcpy(&im, buf.data() + pos + 4, 4);
            v = cd(std::bit_cast<float>(to_le(re)), std::bit_cast<float>(to_le(im)));
            pos += 8;
        }
    return f;
}

void write_csv(const fs::path &path, const std::vector<std::string> &header,
               const std::vector<std::vector<double>> &rows)
{
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i)
        out += (i ? "," : "") + header[i];
    out += '\n';
    char num[64];
    for (const auto &row : rows)
    {
        if (row.size() != header.size())
            throw std::logic_error("csv row width differs from header");
        for (std::size_t i = 0; i < row.size(); ++i)
        {
            std::snprintf(num, sizeof num, "%.12g", row[i]);
            if (i)
                out += ',';
            out += num;
        }
        out += '\n';
    }
    spill(path, out);
}

CsvTable read_csv(const fs::path &path)
{
    std::istringstream in(slurp(path));
    CsvTable t;
    std::string line;
    bool first = true;
    while (std::getline(in, line))
    {
        if (line.empty())
            continue;
        std::istringstream ls(line);
        std::string cell;
        std::vector<double> row;
        while (std::getline(ls, cell, ','))
        {
            if (first)
                t.header.push_back(cell);
            else
                row.push_back(std::stod(cell));
        }
        if (!first)
            t.rows.push_back(std::move(row));
        first = false;
    }
    return t;
}

void write_json(const fs::path &path, const json &doc)
{
    spill(path, doc.dump(2) + "\n");
}

json read_json(const fs::path &path)
{
    try
    {
        return json::parse(slurp(path));
    }
    catch (const json::parse_error &e)
    {
        throw ConfigError(path.string() + ": " + e.what());
    }
}

} // namespace ttdssp::io
