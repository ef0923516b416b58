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

#include "catch2/catch_amalgamated.hpp"

#include "ttdssp/io.hpp"
#include "ttdssp/runner.hpp"
#include "ttdssp/scenario.hpp"

#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

using namespace ttdssp;
namespace fs = std::filesystem;
using Catch::Matchers::WithinAbs;

namespace
{

fs::path scratch(const std::string &name)
{
    const auto dir = fs::temp_directory_path() / "ttdssp_runner_tests" / name;
    fs::remove_all(dir);
    fs::create_directories(dir.parent_path());
    return dir;
}

std::string cli()
{
    const char *p = std::getenv("TTDSSP_CLI");
    return p ? p : "";
}

int run_cli(const std::string &args)
{
    const std::string cmd = cli() + " " + args + " >/dev/null 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

void write_text(const fs::path &p, const std::string &text)
{
    std::ofstream(p) << text;
}

std::string slurp(const fs::path &p)
{
    std::ifstream f(p, std::ios::binary);
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

Scenario quick(Mode mode, const fs::path &dir)
{
    Scenario s;
    s.mode = mode;
    s.output_dir = dir.string();
    s.training.theta_step_deg = 5.0;
    s.beamform.points = 9;
    s.beamform.n_samples = 4000;
    s.evm.n_symbols = 4;
    s.iip3.n_samples = 8000;
    return s;
}

RunResult run_quiet(const Scenario &s, bool dump_iq = false)
{
    std::ostringstream log;
    return run(s, dump_iq, log);
}

} // namespace

TEST_CASE("cli exit codes", "[runner]")
{
    if (cli().empty())
        SKIP("TTDSSP_CLI not set");
    const auto dir = scratch("exit");
    fs::create_directories(dir);

    CHECK(run_cli("dump-taps --out " + (dir / "ok").string()) == kExitOk);
    CHECK(run_cli("train --bogus") == kExitConfig);
    CHECK(run_cli("") == kExitConfig);

    write_text(dir / "bad.yaml", "array: {elements: -3}\n");
    CHECK(run_cli("train --config " + (dir / "bad.yaml").string() + " --out " + (dir / "bad").string()) ==
          kExitConfig);
    CHECK_FALSE(fs::exists(dir / "bad"));

    write_text(dir / "typo.yaml", "aray: {elements: 4}\n");
    CHECK(run_cli("train --config " + (dir / "typo.yaml").string() + " --out " + (dir / "typo").string()) ==
          kExitConfig);

    CHECK(run_cli("dump-taps --elements 8 --out " + (dir / "sizing").string()) == kExitSizing);
    CHECK(fs::exists(dir / "sizing" / "manifest.json"));
    CHECK(io::read_json(dir / "sizing" / "manifest.json").at("exit_code") == kExitSizing);

    write_text(dir / "noise.yaml", "channel: {snr_db: -40}\ntraining: {theta_step_deg: 5}\n");
    CHECK(run_cli("train --config " + (dir / "noise.yaml").string() + " --out " + (dir / "noise").string()) ==
          kExitNoDetection);
    CHECK(io::read_json(dir / "noise" / "manifest.json").at("exit_code") == kExitNoDetection);
}

TEST_CASE("cli overrides seed, output and array size", "[runner]")
{
    if (cli().empty())
        SKIP("TTDSSP_CLI not set");
    const auto dir = scratch("overrides");
    REQUIRE(run_cli("beamform --elements 2 --seed 9 --out " + dir.string()) == kExitOk);
    const auto manifest = io::read_json(dir / "manifest.json");
    CHECK(manifest.at("seed") == 9);
    CHECK(manifest.at("mode") == "beamform");
    const auto s = load_scenario((dir / "scenario.yaml").string());
    CHECK(s.array.elements == 2);
    CHECK(s.seed == 9);
}

TEST_CASE("runs are byte-identical across output directories", "[runner]")
{
    for (Mode mode : {Mode::Train, Mode::Beamform, Mode::Evm, Mode::DumpTaps})
    {
        const auto a = scratch("det_a");
        const auto b = scratch("det_b");
        const auto ra = run_quiet(quick(mode, a), true);
        const auto rb = run_quiet(quick(mode, b), true);
        INFO(to_string(mode));
        REQUIRE(ra.exit_code == kExitOk);
        REQUIRE(rb.exit_code == kExitOk);
        REQUIRE(ra.artifacts.size() == rb.artifacts.size());
        for (std::size_t i = 0; i < ra.artifacts.size(); ++i)
        {
            INFO(ra.artifacts[i].path);
            CHECK(ra.artifacts[i].path == rb.artifacts[i].path);
            CHECK(ra.artifacts[i].sha256 == rb.artifacts[i].sha256);
            CHECK(slurp(a / ra.artifacts[i].path) == slurp(b / rb.artifacts[i].path));
        }
        CHECK(slurp(a / "manifest.json") == slurp(b / "manifest.json"));
    }
}

TEST_CASE("seed changes noisy artifacts", "[runner]")
{
    auto s1 = quick(Mode::Train, scratch("seed1"));
    s1.channel.snr_db = 10.0;
    auto s2 = s1;
    s2.seed = 2;
    s2.output_dir = scratch("seed2").string();
    REQUIRE(run_quiet(s1).exit_code == kExitOk);
    REQUIRE(run_quiet(s2).exit_code == kExitOk);
    CHECK(slurp(fs::path(s1.output_dir) / "psd.csv") != slurp(fs::path(s2.output_dir) / "psd.csv"));
}

TEST_CASE("manifest lists every artifact with its hash", "[runner]")
{
    const auto dir = scratch("manifest");
    const auto s = quick(Mode::Train, dir);
    const auto res = run_quiet(s, true);
    REQUIRE(res.exit_code == kExitOk);

    const auto manifest = io::read_json(dir / "manifest.json");
    CHECK(manifest.at("scenario_hash") == scenario_hash(s));
    CHECK(manifest.at("mode") == "train");

    std::set<std::string> listed;
    for (const auto &f : manifest.at("files"))
    {
        const std::string path = f.at("path");
        listed.insert(path);
        INFO(path);
        REQUIRE(fs::exists(dir / path));
        CHECK(f.at("sha256") == io::sha256_file(dir / path));
        CHECK(f.at("bytes") == fs::file_size(dir / path));
    }
    for (const auto &entry : fs::directory_iterator(dir))
        if (entry.path().filename() != "manifest.json")
            CHECK(listed.count(entry.path().filename().string()) == 1);
    for (const char *name : {"scenario.yaml", "heatmap.csv", "map.csv", "psd.csv", "aoa_estimates.json",
                             "rx.cf32", "rx.cf32.json", "combined.cf32", "combined.cf32.json"})
        CHECK(listed.count(name) == 1);
}

TEST_CASE("json artifacts and sidecars carry the scenario hash", "[runner]")
{
    const auto dir = scratch("hash");
    const auto s = quick(Mode::Beamform, dir);
    REQUIRE(run_quiet(s, true).exit_code == kExitOk);
    for (const auto &entry : fs::directory_iterator(dir))
    {
        if (entry.path().extension() != ".json")
            continue;
        INFO(entry.path().string());
        const auto doc = io::read_json(entry.path());
        CHECK(doc.at("scenario_hash") == scenario_hash(s));
    }
    CHECK(load_scenario((dir / "scenario.yaml").string()).array == s.array);
}

TEST_CASE("dumped i/q matches its sidecar", "[runner]")
{
    const auto dir = scratch("iq");
    auto s = quick(Mode::Train, dir);
    s.array.elements = 4;
    REQUIRE(run_quiet(s, true).exit_code == kExitOk);

    const auto rx = io::read_iq(dir / "rx.cf32");
    CHECK(rx.meta.channels == 4);
    CHECK(rx.channels.size() == 4);
    CHECK(rx.channels[0].size() == rx.meta.samples_per_channel);
    CHECK(fs::file_size(dir / "rx.cf32") == 4 * rx.meta.samples_per_channel * 8);
    CHECK(rx.meta.seed == s.seed);
    CHECK_THAT(rx.meta.theta_deg, WithinAbs(s.channel.theta_deg, 1e-12));

    const auto comb = io::read_iq(dir / "combined.cf32");
    CHECK(comb.meta.channels == 1);
    CHECK(comb.meta.sample_rate_hz == rx.meta.sample_rate_hz);

    const auto no_dump = scratch("iq_off");
    REQUIRE(run_quiet(quick(Mode::Train, no_dump), false).exit_code == kExitOk);
    CHECK_FALSE(fs::exists(no_dump / "rx.cf32"));
}

TEST_CASE("train artifacts", "[runner]")
{
    const auto dir = scratch("train");
    auto s = quick(Mode::Train, dir);
    s.channel.theta_deg = -25.0;
    REQUIRE(run_quiet(s).exit_code == kExitOk);

    const auto heat = io::read_csv(dir / "heatmap.csv");
    CHECK(heat.header.size() > 1);
    CHECK(heat.rows.size() == s.training.theta_grid_rad().size());

    const auto aoa = io::read_json(dir / "aoa_estimates.json");
    CHECK(aoa.dump().find("-25") != std::string::npos);
    std::ostringstream log;
    run(s, false, log);
    CHECK(log.str().find("estimate -25.000") != std::string::npos);
}

TEST_CASE("beamform gain of four matched elements", "[runner]")
{
    const auto dir = scratch("beamform");
    auto s = quick(Mode::Beamform, dir);
    s.array.elements = 4;
    s.beamform.chirp = false;
    REQUIRE(run_quiet(s).exit_code == kExitOk);
    const auto t = io::read_csv(dir / "gain_vs_freq.csv");
    REQUIRE(t.header == std::vector<std::string>{"freq_mhz", "gain_db", "analytic_db"});
    REQUIRE(t.rows.size() == s.beamform.points);
    for (const auto &row : t.rows)
    {
        CHECK_THAT(row[1], WithinAbs(20.0 * std::log10(4.0), 0.05));
        CHECK_THAT(row[2], WithinAbs(20.0 * std::log10(4.0), 1e-3));
        CHECK(row[2] <= 20.0 * std::log10(4.0) + 1e-9);
    }
}

TEST_CASE("remaining modes write their artifacts", "[runner]")
{
    const std::pair<Mode, std::vector<std::string>> cases[] = {
        {Mode::Sweep, {"patterns.csv", "sweep.json"}},
        {Mode::Squint, {"squint.csv", "squint.json"}},
        {Mode::Evm, {"constellation.csv", "evm.json"}},
        {Mode::Iip3, {"two_tone_psd.csv"}},
        {Mode::Hpbw, {"hpbw.csv"}},
        {Mode::DumpTaps, {"training_taps.json", "beamforming_taps.json", "sizing.json"}}};
    for (const auto &[mode, files] : cases)
    {
        INFO(to_string(mode));
        const auto dir = scratch(std::string(to_string(mode)));
        const auto res = run_quiet(quick(mode, dir));
        CHECK(res.exit_code == kExitOk);
        for (const auto &f : files)
        {
            INFO(f);
            CHECK(fs::exists(dir / f));
        }
        for (const auto &a : res.artifacts)
            if (fs::path(a.path).extension() == ".csv")
                CHECK_FALSE(io::read_csv(dir / a.path).header.empty());
    }
}
