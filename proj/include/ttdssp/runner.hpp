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

#include "ttdssp/scenario.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace ttdssp
{

enum ExitCode : int
{
    kExitOk = 0,
    kExitFailure = 1,
    kExitConfig = 2,
    kExitSizing = 3,
    kExitNoDetection = 4
};

struct ArtifactEntry
{
    std::string path; // relative to the output directory
    std::string sha256;
    std::uintmax_t bytes = 0;
};

struct RunResult
{
    int exit_code = kExitOk;
    std::string message;
    std::vector<ArtifactEntry> artifacts;
};

/// Executes scenario.mode, writes its artifacts plus scenario.yaml and
/// manifest.json into scenario.output_dir and prints a short summary to `log`.
/// Library errors are mapped to exit codes (ConfigError 2, SizingError 3,
/// NoDetectionError 4); the manifest is written on every exit path.
RunResult run(const Scenario &scenario, bool dump_iq, std::ostream &log);

} // namespace ttdssp
