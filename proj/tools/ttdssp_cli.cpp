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

#include "ttdssp/errors.hpp"
#include "ttdssp/runner.hpp"
#include "ttdssp/scenario.hpp"

#include "CLI11.hpp"

#include <iostream>
#include <optional>
#include <string>

namespace
{

struct Flags
{
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::size_t> elements;
    bool dump_iq = false;
};

} // namespace

int main(int argc, char **argv)
{
    CLI::App app{"ttdssp - true-time-delay array SSP simulator"};
    app.require_subcommand(1);
    Flags flags;

    const std::pair<const char *, const char *> commands[] = {
        {"train", "rainbow beam training: heat map, map, AoA estimates"},
        {"beamform", "matched-tap beamforming gain versus frequency"},
        {"sweep", "beam patterns for a set of probe directions"},
        {"squint", "phase-shifter squint loss versus TTD"},
        {"evm", "QAM-over-OFDM EVM through the beamformer"},
        {"iip3", "two-tone IIP3 extraction"},
        {"hpbw", "half-power beamwidth versus array size"},
        {"dump-taps", "training and beamforming tap sets plus interleave sizing"}};

    for (const auto &[name, help] : commands)
    {
        CLI::App *sub = app.add_subcommand(name, help);
        sub->add_option("--config", flags.config, "scenario YAML file");
        sub->add_option("--seed", flags.seed, "random seed (overrides the scenario)");
        sub->add_option("--out", flags.out, "output directory (overrides the scenario)");
        sub->add_option("--elements", flags.elements, "array size (overrides array.elements)")
            ->check(CLI::PositiveNumber);
        sub->add_flag("--dump-iq", flags.dump_iq, "also write received and combined I/Q streams");
    }

    try
    {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp &e)
    {
        return app.exit(e);
    }
    catch (const CLI::ParseError &e)
    {
        app.exit(e);
        return ttdssp::kExitConfig;
    }

    try
    {
        ttdssp::Scenario s = flags.config.empty() ? ttdssp::Scenario{} : ttdssp::load_scenario(flags.config);
        s.mode = ttdssp::mode_from_string(app.get_subcommands().front()->get_name());
        if (flags.seed)
            s.seed = *flags.seed;
        if (flags.out)
            s.output_dir = *flags.out;
        if (flags.elements)
            s.array.elements = *flags.elements;
        s.validate();

        const auto res = ttdssp::run(s, flags.dump_iq, std::cout);
        if (res.exit_code != ttdssp::kExitOk)
            std::cerr << "ttdssp: " << res.message << "\n";
        else
            std::cout << "wrote " << res.artifacts.size() << " artifacts + manifest.json to " << s.output_dir
                      << "\n";
        return res.exit_code;
    }
    catch (const ttdssp::ConfigError &e)
    {
        std::cerr << "ttdssp: config error: " << e.what() << "\n";
        return ttdssp::kExitConfig;
    }
    catch (const std::exception &e)
    {
        std::cerr << "ttdssp: " << e.what() << "\n";
        return ttdssp::kExitFailure;
    }
}
