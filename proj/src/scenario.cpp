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

#include "ttdssp/scenario.hpp"

#include "ttdssp/errors.hpp"
#include "ttdssp/io.hpp"

#include <yaml-cpp/yaml.h>

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace ttdssp
{

namespace
{

constexpr std::pair<Mode, std::string_view> kModeNames[] = {
    {Mode::Train, "train"}, {Mode::Beamform, "beamform"}, {Mode::Sweep, "sweep"}, {Mode::Squint, "squint"},
    {Mode::Evm, "evm"},     {Mode::Iip3, "iip3"},         {Mode::Hpbw, "hpbw"},   {Mode::DumpTaps, "dump-taps"}};

[[noreturn]] void bad(const std::string &key, const std::string &why)
{
    throw ConfigError(key + ": " + why);
}

void check_keys(const YAML::Node &node, const std::string &section, std::initializer_list<std::string_view> known)
{
    if (!node.IsMap())
        bad(section, "expected a table");
    for (const auto &kv : node)
    {
        const auto key = kv.first.as<std::string>();
        bool ok = false;
        for (auto k : known)
            ok = ok || key == k;
        if (!ok)
            bad(section.empty() ? key : section + "." + key, "unknown key");
    }
}

template <class T>
void read(const YAML::Node &node, const std::string &section, const char *key, T &dst)
{
    const YAML::Node v = node[key];
    if (!v)
        return;
    try
    {
        dst = v.as<T>();
    }
    catch (const YAML::Exception &)
    {
        bad(section + "." + key, "wrong value type");
    }
}

template <class T>
void read_opt(const YAML::Node &node, const std::string &section, const char *key, std::optional<T> &dst)
{
    const YAML::Node v = node[key];
    if (!v)
        return;
    if (v.IsNull())
    {
        dst.reset();
        return;
    }
    T tmp{};
    read(node, section, key, tmp);
    dst = tmp;
}

void positive(double v, const std::string &key)
{
    if (!(v > 0.0) || !std::isfinite(v))
        bad(key, "must be a finite value > 0");
}

} // namespace

std::string_view to_string(Mode mode)
{
    for (const auto &[m, name] : kModeNames)
        if (m == mode)
            return name;
    return "unknown";
}

Mode mode_from_string(std::string_view name)
{
    for (const auto &[m, n] : kModeNames)
        if (n == name)
            return m;
    throw ConfigError("mode: unknown mode '" + std::string(name) + "'");
}

ArrayConfig ArraySettings::config() const
{
    ArrayConfig cfg;
    cfg.n_elements = elements;
    cfg.carrier_hz = carrier_ghz * 1e9;
    cfg.bandwidth_hz = bandwidth_mhz * 1e6;
    cfg.spacing_m = spacing_wavelengths * cfg.wavelength_m();
    cfg.if_center_hz = if_center_mhz ? *if_center_mhz * 1e6 : 0.5 * cfg.bandwidth_hz;
    return cfg;
}

SamplerConfig SamplerSettings::config(double stimulus_rate_hz, std::uint64_t seed) const
{
    SamplerConfig s;
    s.plan.levels = levels;
    if (sample_rate_ghz > 0.0 && std::abs(sample_rate_ghz * 1e9 - stimulus_rate_hz) > 1e-6 * stimulus_rate_hz)
        bad("sampler.sample_rate_ghz", "differs from the stimulus rate " + std::to_string(stimulus_rate_hz / 1e9) +
                                           " GHz (use 0 to follow the stimulus)");
    s.plan.sample_rate_hz = stimulus_rate_hz;
    s.delay_resolution_s = delay_resolution_ps * 1e-12;
    s.delay_range_s = delay_range_ns * 1e-9;
    s.jitter_rms_s = jitter_rms_ps * 1e-12;
    s.jitter_seed = seed * 2654435761u + 17u;
    s.iip3_dbm = iip3_dbm;
    s.reference_impedance_ohm = reference_impedance_ohm;
    s.validate();
    return s;
}

double SamplerSettings::tone_rate_hz(const ArrayConfig &cfg) const
{
    return sample_rate_ghz > 0.0 ? sample_rate_ghz * 1e9 : 2.0 * cfg.bandwidth_hz;
}

OfdmPlan OfdmSettings::plan(const ArrayConfig &cfg) const
{
    return OfdmPlan::for_band(cfg, n_subcarriers, subcarrier_spacing_khz * 1e3, cp_len, active_subcarriers);
}

std::vector<double> TrainingSettings::theta_grid_rad() const
{
    std::vector<double> out;
    const auto n = static_cast<std::size_t>(std::floor((theta_stop_deg - theta_start_deg) / theta_step_deg + 1e-9));
    for (std::size_t i = 0; i <= n; ++i)
        out.push_back(deg2rad(theta_start_deg + static_cast<double>(i) * theta_step_deg));
    return out;
}

void Scenario::validate() const
{
    if (array.elements < 1)
        bad("array.elements", "must be >= 1");
    positive(array.carrier_ghz, "array.carrier_ghz");
    positive(array.bandwidth_mhz, "array.bandwidth_mhz");
    positive(array.spacing_wavelengths, "array.spacing_wavelengths");
    if (array.if_center_mhz && !std::isfinite(*array.if_center_mhz))
        bad("array.if_center_mhz", "must be finite");
    if (array.bandwidth_mhz * 1e6 >= array.carrier_ghz * 1e9)
        bad("array.bandwidth_mhz", "must be below the carrier");
    if (std::abs(channel.theta_deg) > 90.0)
        bad("channel.theta_deg", "must lie in [-90, 90]");
    if (channel.snr_db && !std::isfinite(*channel.snr_db))
        bad("channel.snr_db", "must be finite or null");
    if (sampler.levels < 1)
        bad("sampler.levels", "must be >= 1");
    if (sampler.sample_rate_ghz < 0.0)
        bad("sampler.sample_rate_ghz", "must be >= 0");
    if (sampler.delay_resolution_ps < 0.0)
        bad("sampler.delay_resolution_ps", "must be >= 0");
    positive(sampler.delay_range_ns, "sampler.delay_range_ns");
    if (sampler.jitter_rms_ps < 0.0)
        bad("sampler.jitter_rms_ps", "must be >= 0");
    if (sampler.iip3_dbm && !std::isfinite(*sampler.iip3_dbm))
        bad("sampler.iip3_dbm", "must be finite or null");
    positive(sampler.reference_impedance_ohm, "sampler.reference_impedance_ohm");
    const auto n = ofdm.n_subcarriers;
    if (n < 8 || (n & (n - 1)) != 0)
        bad("ofdm.n_subcarriers", "must be a power of two >= 8");
    positive(ofdm.subcarrier_spacing_khz, "ofdm.subcarrier_spacing_khz");
    if (ofdm.cp_len >= n)
        bad("ofdm.cp_len", "must be shorter than the symbol");
    if (ofdm.n_symbols < 2)
        bad("ofdm.n_symbols", "must be >= 2 (the first pilot repetition is the prefix)");
    if (training.diversity_order < 1)
        bad("training.diversity_order", "must be >= 1");
    positive(training.theta_step_deg, "training.theta_step_deg");
    if (training.theta_start_deg < -90.0 || training.theta_stop_deg > 90.0 ||
        training.theta_stop_deg <= training.theta_start_deg)
        bad("training.theta_start_deg", "angle range must be increasing inside [-90, 90]");
    if (beamform.points < 1)
        bad("beamform.points", "must be >= 1");
    if (!(beamform.span_mhz >= 0.0) || beamform.span_mhz > array.bandwidth_mhz)
        bad("beamform.span_mhz", "must lie in [0, bandwidth_mhz]");
    if (beamform.n_samples < 64)
        bad("beamform.n_samples", "must be >= 64");
    for (double p : sweep.probe_deg)
        if (std::abs(p) > 90.0)
            bad("sweep.probe_deg", "angles must lie in [-90, 90]");
    positive(sweep.theta_step_deg, "sweep.theta_step_deg");
    if (std::abs(squint.theta_deg) > 90.0)
        bad("squint.theta_deg", "must lie in [-90, 90]");
    for (auto c : squint.element_counts)
        if (c < 1)
            bad("squint.element_counts", "counts must be >= 1");
    if (squint.points < 2)
        bad("squint.points", "must be >= 2");
    if (evm.qam_order != 4 && evm.qam_order != 16)
        bad("evm.qam_order", "must be 4 or 16");
    if (evm.n_symbols < 1)
        bad("evm.n_symbols", "must be >= 1");
    positive(iip3.f1_mhz, "iip3.f1_mhz");
    positive(iip3.f2_mhz, "iip3.f2_mhz");
    if (iip3.f1_mhz == iip3.f2_mhz)
        bad("iip3.f2_mhz", "must differ from f1_mhz");
    if (iip3.input_dbm.empty())
        bad("iip3.input_dbm", "needs at least one level");
    if (iip3.nfft < 16 || iip3.n_samples < iip3.nfft)
        bad("iip3.nfft", "must be >= 16 and <= n_samples");
    for (auto c : hpbw.element_counts)
        if (c < 2)
            bad("hpbw.element_counts", "counts must be >= 2");
    if (output_dir.empty())
        bad("output_dir", "must not be empty");
}

Scenario parse_scenario(std::string_view yaml_text)
{
    YAML::Node root;
    try
    {
        root = YAML::Load(std::string(yaml_text));
    }
    catch (const YAML::Exception &e)
    {
        throw ConfigError(std::string("scenario: ") + e.what());
    }
    Scenario s;
    if (root.IsNull())
        return s;
    check_keys(root, "",
               {"mode", "seed", "output_dir", "array", "channel", "sampler", "ofdm", "training", "beamform", "sweep",
                "squint", "evm", "iip3", "hpbw"});

    std::string mode = std::string(to_string(s.mode));
    read(root, "", "mode", mode);
    s.mode = mode_from_string(mode);
    read(root, "", "seed", s.seed);
    read(root, "", "output_dir", s.output_dir);

    if (auto n = root["array"])
    {
        check_keys(n, "array", {"elements", "carrier_ghz", "bandwidth_mhz", "spacing_wavelengths", "if_center_mhz"});
        read(n, "array", "elements", s.array.elements);
        read(n, "array", "carrier_ghz", s.array.carrier_ghz);
        read(n, "array", "bandwidth_mhz", s.array.bandwidth_mhz);
        read(n, "array", "spacing_wavelengths", s.array.spacing_wavelengths);
        read_opt(n, "array", "if_center_mhz", s.array.if_center_mhz);
    }
    if (auto n = root["channel"])
    {
        check_keys(n, "channel", {"theta_deg", "snr_db"});
        read(n, "channel", "theta_deg", s.channel.theta_deg);
        read_opt(n, "channel", "snr_db", s.channel.snr_db);
    }
    if (auto n = root["sampler"])
    {
        check_keys(n, "sampler",
                   {"levels", "sample_rate_ghz", "delay_resolution_ps", "delay_range_ns", "jitter_rms_ps", "iip3_dbm",
                    "reference_impedance_ohm"});
        read(n, "sampler", "levels", s.sampler.levels);
        read(n, "sampler", "sample_rate_ghz", s.sampler.sample_rate_ghz);
        read(n, "sampler", "delay_resolution_ps", s.sampler.delay_resolution_ps);
        read(n, "sampler", "delay_range_ns", s.sampler.delay_range_ns);
        read(n, "sampler", "jitter_rms_ps", s.sampler.jitter_rms_ps);
        read_opt(n, "sampler", "iip3_dbm", s.sampler.iip3_dbm);
        read(n, "sampler", "reference_impedance_ohm", s.sampler.reference_impedance_ohm);
    }
    if (auto n = root["ofdm"])
    {
        check_keys(n, "ofdm", {"n_subcarriers", "subcarrier_spacing_khz", "active_subcarriers", "cp_len", "n_symbols"});
        read(n, "ofdm", "n_subcarriers", s.ofdm.n_subcarriers);
        read(n, "ofdm", "subcarrier_spacing_khz", s.ofdm.subcarrier_spacing_khz);
        read(n, "ofdm", "active_subcarriers", s.ofdm.active_subcarriers);
        read(n, "ofdm", "cp_len", s.ofdm.cp_len);
        read(n, "ofdm", "n_symbols", s.ofdm.n_symbols);
    }
    if (auto n = root["training"])
    {
        check_keys(n, "training",
                   {"diversity_order", "theta_start_deg", "theta_stop_deg", "theta_step_deg", "mc_trials", "mc_snr_db"});
        read(n, "training", "diversity_order", s.training.diversity_order);
        read(n, "training", "theta_start_deg", s.training.theta_start_deg);
        read(n, "training", "theta_stop_deg", s.training.theta_stop_deg);
        read(n, "training", "theta_step_deg", s.training.theta_step_deg);
        read(n, "training", "mc_trials", s.training.mc_trials);
        read(n, "training", "mc_snr_db", s.training.mc_snr_db);
    }
    if (auto n = root["beamform"])
    {
        check_keys(n, "beamform", {"span_mhz", "points", "n_samples", "chirp"});
        read(n, "beamform", "span_mhz", s.beamform.span_mhz);
        read(n, "beamform", "points", s.beamform.points);
        read(n, "beamform", "n_samples", s.beamform.n_samples);
        read(n, "beamform", "chirp", s.beamform.chirp);
    }
    if (auto n = root["sweep"])
    {
        check_keys(n, "sweep", {"probe_deg", "theta_step_deg"});
        read(n, "sweep", "probe_deg", s.sweep.probe_deg);
        read(n, "sweep", "theta_step_deg", s.sweep.theta_step_deg);
    }
    if (auto n = root["squint"])
    {
        check_keys(n, "squint", {"theta_deg", "element_counts", "points"});
        read(n, "squint", "theta_deg", s.squint.theta_deg);
        read(n, "squint", "element_counts", s.squint.element_counts);
        read(n, "squint", "points", s.squint.points);
    }
    if (auto n = root["evm"])
    {
        check_keys(n, "evm", {"qam_order", "n_symbols", "active_subcarriers"});
        read(n, "evm", "qam_order", s.evm.qam_order);
        read(n, "evm", "n_symbols", s.evm.n_symbols);
        read(n, "evm", "active_subcarriers", s.evm.active_subcarriers);
    }
    if (auto n = root["iip3"])
    {
        check_keys(n, "iip3", {"f1_mhz", "f2_mhz", "input_dbm", "nfft", "n_samples"});
        read(n, "iip3", "f1_mhz", s.iip3.f1_mhz);
        read(n, "iip3", "f2_mhz", s.iip3.f2_mhz);
        read(n, "iip3", "input_dbm", s.iip3.input_dbm);
        read(n, "iip3", "nfft", s.iip3.nfft);
        read(n, "iip3", "n_samples", s.iip3.n_samples);
    }
    if (auto n = root["hpbw"])
    {
        check_keys(n, "hpbw", {"element_counts"});
        read(n, "hpbw", "element_counts", s.hpbw.element_counts);
    }
    s.validate();
    return s;
}

Scenario load_scenario(const std::string &path)
{
    std::ifstream in(path);
    if (!in)
        throw ConfigError("--config: cannot open '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    return parse_scenario(ss.str());
}

namespace
{

// Shortest text that reads back to the same double.
template <class T>
auto scalar(const T &v)
{
    if constexpr (std::is_floating_point_v<T>)
    {
        char buf[32];
        const auto r = std::to_chars(buf, buf + sizeof buf, v);
        return std::string(buf, r.ptr);
    }
    else
        return v;
}

template <class T>
void emit_opt(YAML::Emitter &out, const char *key, const std::optional<T> &v)
{
    out << YAML::Key << key << YAML::Value;
    if (v)
        out << scalar(*v);
    else
        out << YAML::Null;
}

template <class T>
void emit_seq(YAML::Emitter &out, const char *key, const std::vector<T> &v)
{
    out << YAML::Key << key << YAML::Value << YAML::Flow << YAML::BeginSeq;
    for (const auto &x : v)
        out << scalar(x);
    out << YAML::EndSeq;
}

} // namespace

std::string to_yaml(const Scenario &s, bool with_output_dir)
{
    YAML::Emitter out;
    out << YAML::BeginMap;
    out << YAML::Key << "mode" << YAML::Value << std::string(to_string(s.mode));
    out << YAML::Key << "seed" << YAML::Value << scalar(s.seed);
    if (with_output_dir)
        out << YAML::Key << "output_dir" << YAML::Value << scalar(s.output_dir);

    out << YAML::Key << "array" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "elements" << YAML::Value << scalar(s.array.elements);
    out << YAML::Key << "carrier_ghz" << YAML::Value << scalar(s.array.carrier_ghz);
    out << YAML::Key << "bandwidth_mhz" << YAML::Value << scalar(s.array.bandwidth_mhz);
    out << YAML::Key << "spacing_wavelengths" << YAML::Value << scalar(s.array.spacing_wavelengths);
    emit_opt(out, "if_center_mhz", s.array.if_center_mhz);
    out << YAML::EndMap;

    out << YAML::Key << "channel" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "theta_deg" << YAML::Value << scalar(s.channel.theta_deg);
    emit_opt(out, "snr_db", s.channel.snr_db);
    out << YAML::EndMap;

    out << YAML::Key << "sampler" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "levels" << YAML::Value << scalar(s.sampler.levels);
    out << YAML::Key << "sample_rate_ghz" << YAML::Value << scalar(s.sampler.sample_rate_ghz);
    out << YAML::Key << "delay_resolution_ps" << YAML::Value << scalar(s.sampler.delay_resolution_ps);
    out << YAML::Key << "delay_range_ns" << YAML::Value << scalar(s.sampler.delay_range_ns);
    out << YAML::Key << "jitter_rms_ps" << YAML::Value << scalar(s.sampler.jitter_rms_ps);
    emit_opt(out, "iip3_dbm", s.sampler.iip3_dbm);
    out << YAML::Key << "reference_impedance_ohm" << YAML::Value << scalar(s.sampler.reference_impedance_ohm);
    out << YAML::EndMap;

    out << YAML::Key << "ofdm" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "n_subcarriers" << YAML::Value << scalar(s.ofdm.n_subcarriers);
    out << YAML::Key << "subcarrier_spacing_khz" << YAML::Value << scalar(s.ofdm.subcarrier_spacing_khz);
    out << YAML::Key << "active_subcarriers" << YAML::Value << scalar(s.ofdm.active_subcarriers);
    out << YAML::Key << "cp_len" << YAML::Value << scalar(s.ofdm.cp_len);
    out << YAML::Key << "n_symbols" << YAML::Value << scalar(s.ofdm.n_symbols);
    out << YAML::EndMap;

    out << YAML::Key << "training" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "diversity_order" << YAML::Value << scalar(s.training.diversity_order);
    out << YAML::Key << "theta_start_deg" << YAML::Value << scalar(s.training.theta_start_deg);
    out << YAML::Key << "theta_stop_deg" << YAML::Value << scalar(s.training.theta_stop_deg);
    out << YAML::Key << "theta_step_deg" << YAML::Value << scalar(s.training.theta_step_deg);
    out << YAML::Key << "mc_trials" << YAML::Value << scalar(s.training.mc_trials);
    out << YAML::Key << "mc_snr_db" << YAML::Value << scalar(s.training.mc_snr_db);
    out << YAML::EndMap;

    out << YAML::Key << "beamform" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "span_mhz" << YAML::Value << scalar(s.beamform.span_mhz);
    out << YAML::Key << "points" << YAML::Value << scalar(s.beamform.points);
    out << YAML::Key << "n_samples" << YAML::Value << scalar(s.beamform.n_samples);
    out << YAML::Key << "chirp" << YAML::Value << scalar(s.beamform.chirp);
    out << YAML::EndMap;

    out << YAML::Key << "sweep" << YAML::Value << YAML::BeginMap;
    emit_seq(out, "probe_deg", s.sweep.probe_deg);
    out << YAML::Key << "theta_step_deg" << YAML::Value << scalar(s.sweep.theta_step_deg);
    out << YAML::EndMap;

    out << YAML::Key << "squint" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "theta_deg" << YAML::Value << scalar(s.squint.theta_deg);
    emit_seq(out, "element_counts", s.squint.element_counts);
    out << YAML::Key << "points" << YAML::Value << scalar(s.squint.points);
    out << YAML::EndMap;

    out << YAML::Key << "evm" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "qam_order" << YAML::Value << scalar(s.evm.qam_order);
    out << YAML::Key << "n_symbols" << YAML::Value << scalar(s.evm.n_symbols);
    out << YAML::Key << "active_subcarriers" << YAML::Value << scalar(s.evm.active_subcarriers);
    out << YAML::EndMap;

    out << YAML::Key << "iip3" << YAML::Value << YAML::BeginMap;
    out << YAML::Key << "f1_mhz" << YAML::Value << scalar(s.iip3.f1_mhz);
    out << YAML::Key << "f2_mhz" << YAML::Value << scalar(s.iip3.f2_mhz);
    emit_seq(out, "input_dbm", s.iip3.input_dbm);
    out << YAML::Key << "nfft" << YAML::Value << scalar(s.iip3.nfft);
    out << YAML::Key << "n_samples" << YAML::Value << scalar(s.iip3.n_samples);
    out << YAML::EndMap;

    out << YAML::Key << "hpbw" << YAML::Value << YAML::BeginMap;
    emit_seq(out, "element_counts", s.hpbw.element_counts);
    out << YAML::EndMap;

    out << YAML::EndMap;
    return std::string(out.c_str()) + "\n";
}

nlohmann::json to_json(const Scenario &s)
{
    using nlohmann::json;
    auto opt = [](const auto &v) { return v ? json(*v) : json(nullptr); };
    json j;
    j["mode"] = std::string(to_string(s.mode));
    j["seed"] = s.seed;
    j["output_dir"] = s.output_dir;
    j["array"] = {{"elements", s.array.elements},
                  {"carrier_ghz", s.array.carrier_ghz},
                  {"bandwidth_mhz", s.array.bandwidth_mhz},
                  {"spacing_wavelengths", s.array.spacing_wavelengths},
                  {"if_center_mhz", opt(s.array.if_center_mhz)}};
    j["channel"] = {{"theta_deg", s.channel.theta_deg}, {"snr_db", opt(s.channel.snr_db)}};
    j["sampler"] = {{"levels", s.sampler.levels},
                    {"sample_rate_ghz", s.sampler.sample_rate_ghz},
                    {"delay_resolution_ps", s.sampler.delay_resolution_ps},
                    {"delay_range_ns", s.sampler.delay_range_ns},
                    {"jitter_rms_ps", s.sampler.jitter_rms_ps},
                    {"iip3_dbm", opt(s.sampler.iip3_dbm)},
                    {"reference_impedance_ohm", s.sampler.reference_impedance_ohm}};
    j["ofdm"] = {{"n_subcarriers", s.ofdm.n_subcarriers},
                 {"subcarrier_spacing_khz", s.ofdm.subcarrier_spacing_khz},
                 {"active_subcarriers", s.ofdm.active_subcarriers},
                 {"cp_len", s.ofdm.cp_len},
                 {"n_symbols", s.ofdm.n_symbols}};
    j["training"] = {{"diversity_order", s.training.diversity_order},
                     {"theta_start_deg", s.training.theta_start_deg},
                     {"theta_stop_deg", s.training.theta_stop_deg},
                     {"theta_step_deg", s.training.theta_step_deg},
                     {"mc_trials", s.training.mc_trials},
                     {"mc_snr_db", s.training.mc_snr_db}};
    j["beamform"] = {{"span_mhz", s.beamform.span_mhz},
                     {"points", s.beamform.points},
                     {"n_samples", s.beamform.n_samples},
                     {"chirp", s.beamform.chirp}};
    j["sweep"] = {{"probe_deg", s.sweep.probe_deg}, {"theta_step_deg", s.sweep.theta_step_deg}};
    j["squint"] = {{"theta_deg", s.squint.theta_deg},
                   {"element_counts", s.squint.element_counts},
                   {"points", s.squint.points}};
    j["evm"] = {{"qam_order", s.evm.qam_order},
                {"n_symbols", s.evm.n_symbols},
                {"active_subcarriers", s.evm.active_subcarriers}};
    j["iip3"] = {{"f1_mhz", s.iip3.f1_mhz},
                 {"f2_mhz", s.iip3.f2_mhz},
                 {"input_dbm", s.iip3.input_dbm},
                 {"nfft", s.iip3.nfft},
                 {"n_samples", s.iip3.n_samples}};
    j["hpbw"] = {{"element_counts", s.hpbw.element_counts}};
    return j;
}

std::string scenario_hash(const Scenario &s)
{
    auto j = to_json(s);
    j.erase("output_dir");
    return io::sha256_hex(j.dump());
}

} // namespace ttdssp
